"""End-to-end checks of the simulator's headline behaviour."""

import time

import numpy as np
import pytest

import densitylab
from densitylab import DensityMatrix
from experiment_flow.runner import run_experiment
from experiment_flow.schedules import mv1_schedule, mv2_schedule, storage_schedule
from gatekit import cnot, hadamard, omega_all, op1, op2
from models import ExperimentConfig, NoiseModel
from multiverse import (
    AlgorithmOp,
    apply_kraus,
    evolve_step,
    povm_decomposition,
    run_multiverse,
    sample_noise_operators,
    suppress_channel,
)
from qstate import basis_state
from tests.helpers import random_density

R2 = 1 / np.sqrt(2)


def test_bell_construction():
    bell = op2(cnot(), 1, 2, op1(hadamard(), 1, basis_state(2, 0)))
    np.testing.assert_allclose(bell.amps, [R2, 0, 0, R2], atol=1e-12)


@pytest.mark.parametrize("schedule, nq, back_at", [(mv1_schedule(6), 1, 2), (mv2_schedule(10), 2, 6)])
def test_noiseless_fidelity_dips_and_returns(schedule, nq, back_at):
    result = run_multiverse(basis_state(nq, 0), schedule, NoiseModel(p=1.0))
    fid = result.trace.column("fidelity")
    assert result.trace.initial.fidelity == pytest.approx(1.0, abs=1e-9)
    assert fid[0] == pytest.approx(R2, abs=1e-9)
    np.testing.assert_allclose(fid[1:back_at], R2, atol=1e-9)
    np.testing.assert_allclose(fid[back_at:], 1.0, atol=1e-9)


def test_noisy_mv2_preserves_trace_and_hermiticity():
    model = NoiseModel(p=0.8, p1=0.95, n_paths=8, seed=2024)
    rho = densitylab.pure_density(basis_state(2, 0))
    for step, item in enumerate(mv2_schedule(50).steps, start=1):
        algo = item if isinstance(item, AlgorithmOp) else None
        rho = evolve_step(rho, algo, sample_noise_operators(model, 2, step), model)
        assert abs(rho.trace() - 1.0) < 1e-10
        assert rho.hermiticity_defect() < 1e-10


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_classical_limit(seed):
    model = NoiseModel(p=0.8, p1=0.95, n_paths=8, seed=seed)
    result = run_multiverse(basis_state(2, 0), storage_schedule(200), model)
    last = result.trace.records[-1]
    np.testing.assert_allclose(last.eigenvalues, 0.25, atol=0.02)
    assert last.entropy == pytest.approx(2.0, abs=0.05)
    assert last.purity == pytest.approx(0.25, abs=0.02)


def test_povm_equivalence(rng):
    for _ in range(20):
        nq = int(rng.integers(1, 4))
        model = NoiseModel(
            p=float(rng.uniform(0.6, 0.95)),
            p1=float(rng.uniform(0.8, 1.0)),
            n_paths=int(rng.integers(1, 9)),
            seed=int(rng.integers(2**32)),
        )
        rho = DensityMatrix(nq, random_density(nq, rng))
        events = sample_noise_operators(model, nq, step=1)
        np.testing.assert_allclose(
            apply_kraus(povm_decomposition(model, events), rho).entries,
            evolve_step(rho, None, events, model).entries,
            atol=1e-12,
            rtol=0,
        )


def test_channel_suppression_converges_to_noiseless():
    model = NoiseModel(p=0.8, p1=1.0, n_paths=8, seed=31)
    schedule = mv1_schedule(30)
    clean = run_multiverse(basis_state(1, 0), schedule, NoiseModel(p=1.0))
    events = run_multiverse(basis_state(1, 0), schedule, model).events

    finals = []
    for channels in ((), ("x",), ("x", "y"), ("x", "y", "z")):
        current = model
        for channel in channels:
            current = suppress_channel(current, channel)
        run = run_multiverse(basis_state(1, 0), schedule, current, events=events)
        finals.append(run.trace.records[-1].fidelity)
        if len(channels) == 3:
            assert np.array_equal(run.trace.column("fidelity"), clean.trace.column("fidelity"))
            assert np.array_equal(run.final.entries, clean.final.entries)

    assert all(a <= b + 1e-12 for a, b in zip(finals, finals[1:]))
    assert finals[-1] == pytest.approx(clean.trace.records[-1].fidelity, abs=1e-12)


def test_trace_files_identical_across_worker_counts(tmp_path):
    base = dict(experiment="mv2", steps=20, seed=77, paths=6)
    one = run_experiment(ExperimentConfig(**base, workers=1, out=str(tmp_path / "one.csv")))
    many = run_experiment(ExperimentConfig(**base, workers=4, out=str(tmp_path / "many.csv")))
    assert one.path.read_bytes() == many.path.read_bytes()


@pytest.mark.slow
def test_large_register_without_dense_operators():
    psi = basis_state(20, 0)
    start = time.perf_counter()
    out = omega_all(hadamard(), psi)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    assert out.amps.shape == (2**20,)
    np.testing.assert_allclose(out.amps[[0, 12345, 2**20 - 1]], 2 ** -10, rtol=1e-9)
