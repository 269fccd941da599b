import numpy as np
import pytest

from qstate import (
    QubitLabel,
    StateVector,
    basis_state,
    bits_to_decimal,
    born_probabilities,
    decimal_to_bits,
    discard_qubits,
    measure_qubit,
    pick1,
    pick2,
    pick3,
    random_state,
    stride,
    tensor_product,
)
from utils.errors import DimensionError, LabelError, NormalizationError, QubitIndexError

R2 = 1 / np.sqrt(2)


def as_sets(groups):
    return {tuple(int(n) for n in row) for row in groups}


@pytest.mark.parametrize(
    "nq, n, expected",
    [(3, 0, [1, 0, 0, 0, 0, 0, 0, 0]), (2, 3, [0, 0, 0, 1]), (1, 1, [0, 1])],
)
def test_basis_state(nq, n, expected):
    np.testing.assert_array_equal(basis_state(nq, n).amps, expected)


def test_basis_state_out_of_range():
    with pytest.raises(LabelError):
        basis_state(2, 4)


@pytest.mark.parametrize("n, nq, bits", [(6, 3, (1, 1, 0)), (0, 4, (0, 0, 0, 0)), (5, 3, (1, 0, 1))])
def test_decimal_to_bits(n, nq, bits):
    assert decimal_to_bits(n, nq) == QubitLabel(bits)


def test_bits_to_decimal():
    assert bits_to_decimal(QubitLabel((1, 0, 1))) == 5
    assert bits_to_decimal((0, 0, 0, 0)) == 0
    assert bits_to_decimal([1, 1, 1]) == 7
    with pytest.raises(LabelError):
        bits_to_decimal((1, 2))


def test_label_round_trip_exhaustive():
    for nq in range(1, 11):
        for n in range(2 ** nq):
            assert bits_to_decimal(decimal_to_bits(n, nq)) == n


def test_label_renders_as_bit_string():
    assert str(decimal_to_bits(6, 4)) == "0110"


@pytest.mark.parametrize("nq, qubit, expected", [(3, 1, 4), (3, 3, 1), (5, 2, 8)])
def test_stride(nq, qubit, expected):
    assert stride(nq, qubit) == expected


def test_stride_rejects_bad_qubit():
    with pytest.raises(QubitIndexError):
        stride(3, 4)
    with pytest.raises(QubitIndexError):
        stride(3, 0)


def test_pick1_examples():
    assert as_sets(pick1(3, 1)) == {(0, 4), (1, 5), (2, 6), (3, 7)}
    assert as_sets(pick1(1, 1)) == {(0, 1)}
    assert as_sets(pick1(3, 3)) == {(0, 1), (2, 3), (4, 5), (6, 7)}


def test_pick2_examples():
    assert as_sets(pick2(3, 1, 2)) == {(0, 2, 4, 6), (1, 3, 5, 7)}
    assert as_sets(pick2(2, 1, 2)) == {(0, 1, 2, 3)}
    assert as_sets(pick2(3, 2, 3)) == {(0, 1, 2, 3), (4, 5, 6, 7)}


def test_pick2_follows_argument_order():
    # (n00, n01, n10, n11) with n01 stepping along the second argument
    assert as_sets(pick2(2, 2, 1)) == {(0, 2, 1, 3)}


def test_pick3_examples():
    assert as_sets(pick3(3, 1, 2, 3)) == {tuple(range(8))}
    assert as_sets(pick3(4, 1, 2, 3)) == {(0, 2, 4, 6, 8, 10, 12, 14), (1, 3, 5, 7, 9, 11, 13, 15)}
    assert as_sets(pick3(4, 2, 3, 4)) == {tuple(range(8)), tuple(range(8, 16))}


def test_pick_rejects_duplicates():
    with pytest.raises(QubitIndexError):
        pick2(3, 2, 2)
    with pytest.raises(QubitIndexError):
        pick3(4, 1, 5, 2)


def test_pick_families_partition_index_space():
    import itertools

    for nq in range(1, 9):
        for k in (1, 2, 3):
            if k > nq:
                continue
            for qubits in itertools.permutations(range(1, nq + 1), k):
                groups = {1: pick1, 2: pick2, 3: pick3}[k](nq, *qubits)
                flat = np.sort(groups.reshape(-1))
                np.testing.assert_array_equal(flat, np.arange(2 ** nq))
                if k == 1:
                    np.testing.assert_array_equal(groups[:, 1] - groups[:, 0], stride(nq, qubits[0]))


def test_tensor_product_examples():
    zero, one = basis_state(1, 0), basis_state(1, 1)
    np.testing.assert_array_equal(tensor_product(zero, zero).amps, [1, 0, 0, 0])
    np.testing.assert_array_equal(tensor_product(one, zero).amps, [0, 0, 1, 0])
    plus = StateVector(1, [R2, R2])
    np.testing.assert_allclose(tensor_product(plus, one).amps, [0, R2, 0, R2])


def test_tensor_product_preserves_norm(rng):
    a, b = random_state(2, rng), random_state(3, rng)
    assert tensor_product(a, b).norm() == pytest.approx(a.norm() * b.norm(), abs=1e-12)


def test_state_vector_checks():
    with pytest.raises(DimensionError):
        StateVector(2, [1, 0, 0])
    with pytest.raises(NormalizationError):
        StateVector(1, [1, 1]).validate()
    assert StateVector.from_amplitudes([0, 0, 0, 1]).nq == 2


def test_measure_definite_state(rng):
    outcome = measure_qubit(basis_state(2, 2), 1, rng)
    assert outcome.bit == 1
    assert outcome.probability == pytest.approx(1.0)
    np.testing.assert_allclose(outcome.collapsed.amps, [0, 0, 1, 0])


def test_measure_bell_collapses_consistently(rng):
    bell = StateVector(2, [R2, 0, 0, R2])
    seen = set()
    for _ in range(50):
        outcome = measure_qubit(bell, 1, rng)
        assert outcome.probability == pytest.approx(0.5)
        expected = [1, 0, 0, 0] if outcome.bit == 0 else [0, 0, 0, 1]
        np.testing.assert_allclose(outcome.collapsed.amps, expected, atol=1e-12)
        assert outcome.collapsed.is_normalized()
        seen.add(outcome.bit)
    assert seen == {0, 1}


def test_measure_frequencies_follow_born_rule(rng):
    psi = StateVector(2, [np.sqrt(0.36), np.sqrt(0.64), 0, 0])
    assert born_probabilities(psi, 2) == pytest.approx((0.36, 0.64))
    samples = 100_000
    ones = sum(measure_qubit(psi, 2, rng).bit for _ in range(samples))
    sigma = np.sqrt(samples * 0.64 * 0.36)
    assert abs(ones - samples * 0.64) < 3 * sigma


def test_discard_definite_qubits():
    psi = tensor_product(StateVector(1, [0.6, 0.8]), basis_state(2, 2))
    kept = discard_qubits(psi, (2, 3))
    np.testing.assert_allclose(kept.amps, [0.6, 0.8])


def test_discard_rejects_superposition():
    with pytest.raises(LabelError):
        discard_qubits(StateVector(2, [R2, 0, 0, R2]), (2,))
