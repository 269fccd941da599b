import numpy as np
import pytest

from experiment_flow.schedules import mv2_schedule, parse_circuit, pad_with_noise
from gatekit import hadamard, omega_all
from multiverse import Schedule
from qstate import StateVector, basis_state, random_state
from utils.displays import amplitude_rows, amplitude_table, ascii_circuit, dirac_form, parse_dirac_form

R2 = 1 / np.sqrt(2)


def test_dirac_form_examples():
    assert dirac_form(basis_state(3, 0)) == "1.0000|000⟩"
    assert dirac_form(StateVector(2, [R2, 0, 0, R2])) == "0.70711|00⟩ + 0.70711|11⟩"
    uniform = dirac_form(omega_all(hadamard(), basis_state(3, 0)))
    assert uniform.count("0.35355|") == 8


def test_dirac_form_signs_and_phases():
    assert dirac_form(StateVector(1, [R2, -R2])) == "0.70711|0⟩ - 0.70711|1⟩"
    assert dirac_form(StateVector(1, [1j, 0])) == "1.0000i|0⟩"
    mixed = dirac_form(StateVector(1, [0.6, 0.48 + 0.64j]))
    assert mixed == "0.60000|0⟩ + (0.48000+0.64000i)|1⟩"


def test_dirac_form_omits_small_amplitudes():
    psi = StateVector(2, [1.0, 1e-12, 0, 0])
    assert dirac_form(psi) == "1.0000|00⟩"


def test_dirac_form_reparses_within_display_precision(rng):
    for nq in (1, 2, 3):
        psi = random_state(nq, rng)
        parsed = parse_dirac_form(dirac_form(psi))
        rebuilt = np.array([parsed.get(n, 0) for n in range(psi.dim)])
        np.testing.assert_allclose(rebuilt, psi.amps, atol=1e-4)


def test_amplitude_rows():
    assert amplitude_rows(basis_state(1, 1)) == [(1, "1", 1.0, 0.0)]
    rows = amplitude_rows(StateVector(1, [R2, -R2]))
    assert [r[3] for r in rows] == pytest.approx([0.0, np.pi])
    (row,) = amplitude_rows(StateVector(1, [1j, 0]))
    assert row[3] == pytest.approx(1.5708, abs=1e-4)


def test_amplitude_table_has_one_line_per_amplitude():
    table = amplitude_table(StateVector(2, [R2, 0, 0, R2]))
    lines = table.splitlines()
    assert len(lines) == 3
    assert lines[1].split() == ["0", "00", "0.707107", "0"]
    assert lines[2].split()[:2] == ["3", "11"]


def test_ascii_circuit_mv2():
    lines = ascii_circuit(mv2_schedule(), 2).splitlines()
    assert lines[0] == "q1: ─H──N──●──N──●──N──H──"
    assert lines[1] == "q2: ────N──⊕──N──⊕──N─────"


def test_ascii_circuit_empty_schedule():
    assert ascii_circuit(Schedule(), 2) == "q1: ─\nq2: ─"


def test_ascii_circuit_toffoli():
    steps, _ = parse_circuit("toffoli:1,2,3")
    lines = ascii_circuit(pad_with_noise(steps, None), 3).splitlines()
    assert [line[-3] for line in lines] == ["●", "●", "⊕"]
