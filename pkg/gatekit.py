"""
gatekit.py
~~~~~~~~~~~~~~~~~~~~~~

Gate constructors and the strided application kernels.

• A gate on k qubits is a 2^k×2^k `GateMatrix`; it is never expanded to the
  2^nq×2^nq operator. Instead the partner groups from `qstate.pick` are
  gathered into a (groups, 2^k) block and multiplied by the small matrix.
• `op1/op2/op3` act on state vectors, `omega_all` applies a one-qubit gate
  to every qubit, `conjugate_density` forms ΩρΩ† column-wise then row-wise.
• The first qubit argument of CNOT / controlled-phase is the control.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

import qstate
from densitylab import DensityMatrix
from qstate import StateVector
from utils.constants import SIGMA, UNITARY_TOL
from utils.errors import ArityError, DimensionError, LabelError, NonUnitaryGateError

logger = logging.getLogger(__name__)


# ----- GateMatrix -----------------------------------------------------------
@dataclass(frozen=True, eq=False)
class GateMatrix:
    """Matrix elements ⟨q'|Ω|q⟩ of a gate on `arity` qubits."""
    arity: int
    entries: np.ndarray
    name: str = "U"

    def __post_init__(self):
        if self.arity not in (1, 2, 3):
            raise ArityError(f"gate arity must be 1, 2 or 3, got {self.arity}")
        entries = np.array(self.entries, dtype=np.complex128)
        dim = 2 ** self.arity
        if entries.shape != (dim, dim):
            raise DimensionError(f"arity-{self.arity} gate needs a {dim}x{dim} matrix, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        eye = np.eye(2 ** self.arity)
        return bool(np.max(np.abs(self.entries @ self.entries.conj().T - eye)) <= tol)

    def validate(self, tol: float = UNITARY_TOL) -> "GateMatrix":
        if not self.is_unitary(tol):
            raise NonUnitaryGateError(f"gate {self.name!r} is not unitary within {tol:g}")
        return self

    def dagger(self) -> "GateMatrix":
        return GateMatrix(self.arity, self.entries.conj().T, f"{self.name}†")

    def __matmul__(self, other: "GateMatrix") -> "GateMatrix":
        if other.arity != self.arity:
            raise ArityError(f"cannot compose arity {self.arity} with arity {other.arity}")
        return GateMatrix(self.arity, self.entries @ other.entries, f"{self.name}·{other.name}")

    def __repr__(self) -> str:
        return f"GateMatrix({self.name!r}, arity={self.arity})"


def gate_from_matrix(entries, name: str = "U", validate: bool = False) -> GateMatrix:
    """Wrap a user matrix; unitarity is only checked when asked (projectors are allowed)."""
    entries = np.asarray(entries, dtype=np.complex128)
    arity = entries.shape[0].bit_length() - 1
    gate = GateMatrix(arity, entries, name)
    return gate.validate() if validate else gate


def _builtin(arity: int, entries, name: str) -> GateMatrix:
    return GateMatrix(arity, entries, name).validate()


# ----- Standard gates -------------------------------------------------------
_PAULI_NAMES = ("I", "X", "Y", "Z")


def pauli(k: int) -> GateMatrix:
    if k not in (0, 1, 2, 3):
        raise LabelError(f"Pauli component must be 0..3, got {k}")
    return _builtin(1, SIGMA[k], _PAULI_NAMES[k])


def identity(arity: int = 1) -> GateMatrix:
    return _builtin(arity, np.eye(2 ** arity), "I")


def hadamard() -> GateMatrix:
    return _builtin(1, (SIGMA[1] + SIGMA[3]) / np.sqrt(2.0), "H")


def cnot() -> GateMatrix:
    entries = np.eye(4)
    entries[[2, 3]] = entries[[3, 2]]
    return _builtin(2, entries, "CNOT")


def controlled_phase(theta: float) -> GateMatrix:
    return _builtin(2, np.diag([1, 1, 1, np.exp(1j * theta)]), "CPHASE")


def toffoli() -> GateMatrix:
    entries = np.eye(8)
    entries[[6, 7]] = entries[[7, 6]]
    return _builtin(3, entries, "TOFFOLI")


def pauli_string(components: Sequence[int]) -> GateMatrix:
    """σ_a ⊗ σ_b [⊗ σ_c] as one gate on len(components) qubits."""
    entries = np.ones((1, 1), dtype=np.complex128)
    for k in components:
        entries = np.kron(entries, pauli(k).entries)
    name = "".join(_PAULI_NAMES[k] for k in components)
    return _builtin(len(components), entries, name)


def rotation(theta: float, axis: Sequence[float]) -> GateMatrix:
    """exp(−i(θ/2) n̂·σ⃗) = cos(θ/2)·1 − i sin(θ/2) n̂·σ⃗."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    n_sigma = n[0] * SIGMA[1] + n[1] * SIGMA[2] + n[2] * SIGMA[3]
    entries = np.cos(theta / 2.0) * SIGMA[0] - 1j * np.sin(theta / 2.0) * n_sigma
    return _builtin(1, entries, "R")


def sample_rotation_parameters(rng: np.random.Generator) -> tuple:
    """(θ, nx, ny, nz) with θ uniform on [0, 2π) and n̂ uniform on the sphere."""
    theta = rng.uniform(0.0, 2.0 * np.pi)
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return float(theta), float(axis[0]), float(axis[1]), float(axis[2])


def random_rotation(rng: np.random.Generator) -> GateMatrix:
    theta, nx, ny, nz = sample_rotation_parameters(rng)
    return rotation(theta, (nx, ny, nz))


# ----- Kernels --------------------------------------------------------------
def _kernel_rows(entries: np.ndarray, groups: np.ndarray, data: np.ndarray) -> np.ndarray:
    """
    Apply the small matrix to every partner group along axis 0 of `data`.

    `data[groups]` has shape (G, d, ...); each group is disjoint so the whole
    batch is one einsum with no summation across groups.
    """
    out = np.array(data, dtype=np.complex128)
    out[groups] = np.einsum("rc,gc...->gr...", entries, data[groups])
    return out


def _check_arity(gate: GateMatrix, qubits: Sequence[int]) -> None:
    if gate.arity != len(qubits):
        raise ArityError(f"gate {gate.name!r} has arity {gate.arity} but {len(qubits)} qubit(s) given")


def apply_gate(gate: GateMatrix, qubits: Sequence[int], psi: StateVector) -> StateVector:
    """Apply a 1-, 2- or 3-qubit gate to the listed qubits of psi."""
    qubits = tuple(qubits)
    _check_arity(gate, qubits)
    groups = qstate.pick(psi.nq, qubits)
    logger.debug(f"apply {gate.name} on {qubits}: {groups.shape[0]} groups of {groups.shape[1]}")
    return StateVector(psi.nq, _kernel_rows(gate.entries, groups, psi.amps))


def op1(gate: GateMatrix, qubit: int, psi: StateVector) -> StateVector:
    return apply_gate(gate, (qubit,), psi)


def op2(gate: GateMatrix, is1: int, is2: int, psi: StateVector) -> StateVector:
    return apply_gate(gate, (is1, is2), psi)


def op3(gate: GateMatrix, is1: int, is2: int, is3: int, psi: StateVector) -> StateVector:
    return apply_gate(gate, (is1, is2, is3), psi)


def omega_all(gate: GateMatrix, psi: StateVector) -> StateVector:
    if gate.arity != 1:
        raise ArityError(f"omega_all needs a one-qubit gate, got arity {gate.arity}")
    for qubit in range(1, psi.nq + 1):
        psi = op1(gate, qubit, psi)
    return psi


def conjugate_density(gate: GateMatrix, qubits: Sequence[int], rho: DensityMatrix) -> DensityMatrix:
    """ΩρΩ†: the kernel on every column of ρ, then the conjugate kernel on every row."""
    qubits = tuple(qubits)
    _check_arity(gate, qubits)
    groups = qstate.pick(rho.nq, qubits)
    left = _kernel_rows(gate.entries, groups, rho.entries)
    both = _kernel_rows(gate.entries.conj(), groups, left.T).T
    return DensityMatrix(rho.nq, both)
