"""
qstate.py
~~~~~~~~~~~~~~~~~~~~~~

State vectors over n qubits and the index arithmetic the gate kernels run on.

• Qubits are numbered 1..nq with qubit 1 the most significant bit of the
  decimal label n = Σ q_i·2^(nq−i).
• `pick1/pick2/pick3` enumerate the pairs, quartets and octets of decimal
  labels coupled by a gate on 1, 2 or 3 qubits; each family partitions [0, 2^nq).
• `measure_qubit` samples the Born rule and collapses the state.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from utils.constants import DEFINITE_TOL, NORM_TOL
from utils.errors import DimensionError, LabelError, NormalizationError, QubitIndexError

logger = logging.getLogger(__name__)


# ----- Domain types ---------------------------------------------------------
@dataclass(frozen=True, eq=False)
class StateVector:
    """2^nq complex amplitudes C_n; the array is copied and made read-only."""
    nq: int
    amps: np.ndarray

    def __post_init__(self):
        if self.nq < 1:
            raise DimensionError(f"qubit count must be positive, got {self.nq}")
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2 ** self.nq:
            raise DimensionError(f"expected {2 ** self.nq} amplitudes for nq={self.nq}, got {amps.shape[0]}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex]) -> "StateVector":
        """Infer nq from the amplitude count (must be a power of two)."""
        size = len(amps)
        nq = size.bit_length() - 1
        if size < 2 or 2 ** nq != size:
            raise DimensionError(f"amplitude count {size} is not a power of two >= 2")
        return cls(nq, np.asarray(amps))

    @property
    def dim(self) -> int:
        return 2 ** self.nq

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(float(np.vdot(self.amps, self.amps).real) - 1.0) <= tol

    def validate(self, tol: float = NORM_TOL) -> "StateVector":
        if not self.is_normalized(tol):
            raise NormalizationError(f"state norm² is {np.vdot(self.amps, self.amps).real!r}, expected 1")
        return self

    def label(self, n: int) -> "QubitLabel":
        return decimal_to_bits(n, self.nq)

    def __repr__(self) -> str:
        return f"StateVector(nq={self.nq})"


@dataclass(frozen=True)
class QubitLabel:
    """Bits q_1 … q_nq, most significant first."""
    bits: Tuple[int, ...]

    @property
    def nq(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    bit: int
    probability: float
    collapsed: StateVector


# ----- Labels and strides ---------------------------------------------------
def _check_qubit(nq: int, qubit: int) -> None:
    if not 1 <= qubit <= nq:
        raise QubitIndexError(f"qubit index {qubit} outside 1..{nq}")


def _check_qubits(nq: int, qubits: Sequence[int]) -> None:
    for q in qubits:
        _check_qubit(nq, q)
    if len(set(qubits)) != len(qubits):
        raise QubitIndexError(f"qubit indices must be distinct, got {tuple(qubits)}")


def basis_state(nq: int, n: int) -> StateVector:
    if nq < 1:
        raise DimensionError(f"qubit count must be positive, got {nq}")
    if not 0 <= n < 2 ** nq:
        raise LabelError(f"basis index {n} outside [0, {2 ** nq})")
    amps = np.zeros(2 ** nq, dtype=np.complex128)
    amps[n] = 1.0
    return StateVector(nq, amps)


def decimal_to_bits(n: int, nq: int) -> QubitLabel:
    if not 0 <= n < 2 ** nq:
        raise LabelError(f"decimal label {n} outside [0, {2 ** nq})")
    # qubit i carries weight 2^(nq−i)
    return QubitLabel(tuple((n >> (nq - i)) & 1 for i in range(1, nq + 1)))


def bits_to_decimal(label) -> int:
    bits = label.bits if isinstance(label, QubitLabel) else tuple(label)
    n = 0
    for bit in bits:
        if bit not in (0, 1):
            raise LabelError(f"invalid bit value {bit!r}")
        n = (n << 1) | int(bit)
    return n


def stride(nq: int, qubit: int) -> int:
    """Decimal distance 2^(nq−is) between partner states differing only in `qubit`."""
    _check_qubit(nq, qubit)
    return 2 ** (nq - qubit)


# ----- Partner enumeration --------------------------------------------------
def _pick(nq: int, qubits: Sequence[int]) -> np.ndarray:
    _check_qubits(nq, qubits)
    strides = [stride(nq, q) for q in qubits]
    mask = sum(strides)
    labels = np.arange(2 ** nq, dtype=np.int64)
    # group leaders: every selected qubit reads 0
    base = labels[(labels & mask) == 0]
    # columns ordered by the (q_is1, q_is2, ...) bit pattern, first qubit most significant
    offsets = np.array(
        [sum(b * s for b, s in zip(pattern, strides)) for pattern in itertools.product((0, 1), repeat=len(qubits))],
        dtype=np.int64,
    )
    return base[:, None] + offsets[None, :]


def pick1(nq: int, qubit: int) -> np.ndarray:
    """(2^nq/2, 2) array of (n0, n1) pairs with n1 = n0 + stride."""
    return _pick(nq, (qubit,))


def pick2(nq: int, is1: int, is2: int) -> np.ndarray:
    """(2^nq/4, 4) array of (n00, n01, n10, n11) quartets."""
    return _pick(nq, (is1, is2))


def pick3(nq: int, is1: int, is2: int, is3: int) -> np.ndarray:
    """(2^nq/8, 8) array of octets ordered by the (q_is1, q_is2, q_is3) pattern 000…111."""
    return _pick(nq, (is1, is2, is3))


def pick(nq: int, qubits: Sequence[int]) -> np.ndarray:
    """Partner groups for any number of qubits (used by the kernels)."""
    return _pick(nq, tuple(qubits))


# ----- Composition and measurement ------------------------------------------
def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    return StateVector(a.nq + b.nq, np.kron(a.amps, b.amps))


def random_state(nq: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=2 ** nq) + 1j * rng.normal(size=2 ** nq)
    return StateVector(nq, amps / np.linalg.norm(amps))


def born_probabilities(psi: StateVector, qubit: int) -> Tuple[float, float]:
    """(P(q_is=0), P(q_is=1))."""
    pairs = pick1(psi.nq, qubit)
    weights = np.abs(psi.amps) ** 2
    return float(weights[pairs[:, 0]].sum()), float(weights[pairs[:, 1]].sum())


def measure_qubit(psi: StateVector, qubit: int, rng: np.random.Generator) -> MeasurementOutcome:
    p0, p1 = born_probabilities(psi, qubit)
    total = p0 + p1
    # probabilities relative to the state's own norm
    bit = int(rng.random() < p1 / total)
    prob = (p1 if bit else p0) / total
    pairs = pick1(psi.nq, qubit)
    amps = np.array(psi.amps)
    amps[pairs[:, 1 - bit]] = 0.0  # drop the other branch
    amps /= np.sqrt(prob * total)
    logger.debug(f"measured qubit {qubit}: bit={bit} p={prob:.6g}")
    return MeasurementOutcome(bit=bit, probability=prob, collapsed=StateVector(psi.nq, amps))


def discard_qubits(psi: StateVector, qubits: Sequence[int]) -> StateVector:
    """
    Remove qubits that sit in a definite basis state (e.g. measured ancillas).

    Raises LabelError if any listed qubit is still in superposition.
    """
    _check_qubits(psi.nq, qubits)
    if len(qubits) >= psi.nq:
        raise QubitIndexError("cannot discard every qubit of the register")
    index = [slice(None)] * psi.nq
    for q in qubits:
        p0, p1 = born_probabilities(psi, q)
        if min(p0, p1) > DEFINITE_TOL:
            raise LabelError(f"qubit {q} is not in a definite state (P0={p0:.3g}, P1={p1:.3g})")
        index[q - 1] = 0 if p0 >= p1 else 1
    # one axis per qubit; fixing an axis removes that qubit
    kept = psi.amps.reshape((2,) * psi.nq)[tuple(index)]
    return StateVector(psi.nq - len(qubits), kept.reshape(-1))
