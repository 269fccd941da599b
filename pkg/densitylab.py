"""
densitylab.py
~~~~~~~~~~~~~~~~~~~~~~

Density matrices and the decoherence diagnostics tracked along a run.

• `DensityMatrix` – Hermitian, unit-trace 2^nq×2^nq matrix (read-only array)
• `ensemble_average` – weighted sum over paths
• metrics – entropy (log₂, so the classical limit is S → nq), purity, exact
  Uhlmann fidelity and its eigenvalue approximation, sorted eigenvalues
• `bloch_vector`, `correlation_tensor`, `bloch_data` – polarization and spin
  correlations, computed on reduced matrices from `partial_trace`
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np
import scipy.linalg as la

from qstate import StateVector
from utils.constants import DENSITY_TOL, NEGATIVE_EIG_TOL, SIGMA, SPECTRAL_CUTOFF, WEIGHT_TOL
from utils.errors import (
    DimensionError,
    HermiticityError,
    InvariantViolation,
    QubitIndexError,
    WeightError,
)

logger = logging.getLogger(__name__)


# ----- Domain types ---------------------------------------------------------
@dataclass(frozen=True, eq=False)
class DensityMatrix:
    nq: int
    entries: np.ndarray

    def __post_init__(self):
        if self.nq < 1:
            raise DimensionError(f"qubit count must be positive, got {self.nq}")
        entries = np.array(self.entries, dtype=np.complex128)
        dim = 2 ** self.nq
        if entries.shape != (dim, dim):
            raise DimensionError(f"expected a {dim}x{dim} matrix for nq={self.nq}, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return 2 ** self.nq

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def validate(self, tol: float = DENSITY_TOL) -> "DensityMatrix":
        """Raise InvariantViolation unless ρ = ρ† and Tr ρ = 1 within tol."""
        defect = self.hermiticity_defect()
        if defect > tol:
            raise HermiticityError(f"‖ρ − ρ†‖∞ = {defect:.3g} exceeds {tol:g}")
        trace = self.trace()
        if abs(trace - 1.0) > tol:
            raise InvariantViolation(f"Tr ρ = {trace:.12g}, expected 1")
        return self

    def __repr__(self) -> str:
        return f"DensityMatrix(nq={self.nq})"


@dataclass(frozen=True)
class BlochData:
    """Per-qubit polarizations P⃗ and per-pair 3×3 correlation tensors."""
    polarization: Dict[int, np.ndarray] = field(default_factory=dict)
    correlation: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)


# ----- Construction ---------------------------------------------------------
def density_from_array(entries, validate: bool = True) -> DensityMatrix:
    entries = np.asarray(entries, dtype=np.complex128)
    nq = entries.shape[0].bit_length() - 1
    rho = DensityMatrix(nq, entries)
    return rho.validate() if validate else rho


def pure_density(psi: StateVector) -> DensityMatrix:
    return DensityMatrix(psi.nq, np.outer(psi.amps, psi.amps.conj()))


def maximally_mixed(nq: int) -> DensityMatrix:
    return DensityMatrix(nq, np.eye(2 ** nq) / 2 ** nq)


def ensemble_average(weights: Sequence[float], rhos: Sequence[DensityMatrix]) -> DensityMatrix:
    if len(weights) != len(rhos) or not rhos:
        raise DimensionError(f"need one weight per matrix, got {len(weights)} weights for {len(rhos)} matrices")
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0):
        raise WeightError("ensemble weights must be nonnegative")
    if abs(weights.sum() - 1.0) > WEIGHT_TOL:
        raise WeightError(f"ensemble weights sum to {weights.sum()!r}, expected 1")
    nq = rhos[0].nq
    if any(rho.nq != nq for rho in rhos):
        raise DimensionError("all density matrices must have the same qubit count")
    total = np.zeros((2 ** nq, 2 ** nq), dtype=np.complex128)
    for weight, rho in zip(weights, rhos):
        total += weight * rho.entries
    return DensityMatrix(nq, total)


# ----- Spectra --------------------------------------------------------------
def eigenvalues(rho: DensityMatrix) -> np.ndarray:
    """Real eigenvalues in descending order."""
    defect = rho.hermiticity_defect()
    if defect > DENSITY_TOL:
        raise HermiticityError(f"‖ρ − ρ†‖∞ = {defect:.3g}; eigenvalues would not be real")
    return la.eigvalsh(rho.entries)[::-1]


def _clamp_spectrum(vals: np.ndarray, what: str) -> np.ndarray:
    """Zero eigenvalues below the spectral cutoff; fail on real negativity."""
    lowest = float(vals.min())
    if lowest < -NEGATIVE_EIG_TOL:
        raise InvariantViolation(f"{what} has eigenvalue {lowest:.3g} < 0")
    # below the cutoff but still negative: round-off large enough to mention
    if lowest < -SPECTRAL_CUTOFF:
        logger.warning(f"clamped negative eigenvalue {lowest:.3g} of {what} to 0")
    return np.where(vals < SPECTRAL_CUTOFF, 0.0, vals)


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Square root of a Hermitian positive semidefinite matrix via eigh."""
    vals, vecs = la.eigh((matrix + matrix.conj().T) / 2.0)
    vals = _clamp_spectrum(vals, "matrix")
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def entropy(rho: DensityMatrix) -> float:
    """von Neumann entropy in qubits, −Σ λ log₂ λ with 0·log 0 = 0."""
    lam = np.clip(_clamp_spectrum(eigenvalues(rho), "ρ"), 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)) + 0.0)


def purity(rho: DensityMatrix) -> float:
    # Tr ρ² = Σ |ρ_ij|² for Hermitian ρ
    return float(np.sum(np.abs(rho.entries) ** 2))


def fidelity(rho: DensityMatrix, rho0: DensityMatrix) -> float:
    """Uhlmann fidelity Tr √(√ρ₀ ρ √ρ₀)."""
    _check_same(rho, rho0)
    root = _psd_sqrt(rho0.entries)
    inner = root @ rho.entries @ root
    vals = _clamp_spectrum(la.eigvalsh((inner + inner.conj().T) / 2.0), "√ρ₀ρ√ρ₀")
    return float(np.sum(np.sqrt(vals)))


def fidelity_approx(rho: DensityMatrix, rho0: DensityMatrix) -> float:
    """Σ √|λ_i| over the eigenvalues of ρ·ρ₀; exact when ρ₀ is pure."""
    _check_same(rho, rho0)
    mags = np.abs(la.eigvals(rho.entries @ rho0.entries))
    mags = np.where(mags < SPECTRAL_CUTOFF, 0.0, mags)
    return float(np.sum(np.sqrt(mags)))


def _check_same(a: DensityMatrix, b: DensityMatrix) -> None:
    if a.nq != b.nq:
        raise DimensionError(f"qubit counts differ: {a.nq} vs {b.nq}")


def is_classical(rho: DensityMatrix, tol: float = 1e-6) -> bool:
    """True when every off-diagonal element is below tol (decohered form)."""
    off = rho.entries - np.diag(np.diag(rho.entries))
    return bool(np.max(np.abs(off)) <= tol)


# ----- Subsystems -----------------------------------------------------------
def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix over the kept qubits (1-based, strictly increasing)."""
    keep = tuple(keep)
    if not keep:
        raise QubitIndexError("partial_trace needs at least one qubit to keep")
    if any(not 1 <= q <= rho.nq for q in keep) or any(b <= a for a, b in zip(keep, keep[1:])):
        raise QubitIndexError(f"kept qubits {keep} must be strictly increasing within 1..{rho.nq}")
    traced = [q for q in range(1, rho.nq + 1) if q not in keep]
    tensor = rho.entries.reshape((2,) * (2 * rho.nq))
    remaining = rho.nq
    # trace the highest qubit first so lower axis numbers stay valid
    for q in reversed(traced):
        tensor = np.trace(tensor, axis1=q - 1, axis2=q - 1 + remaining)
        remaining -= 1
    dim = 2 ** len(keep)
    return DensityMatrix(len(keep), tensor.reshape(dim, dim))


def subsystem_entropy(rho: DensityMatrix, keep: Sequence[int]) -> float:
    return entropy(partial_trace(rho, keep))


def bloch_vector(rho: DensityMatrix, qubit: int) -> np.ndarray:
    """P⃗ = Tr[σ⃗ ρ_q] on the reduced one-qubit matrix."""
    if not 1 <= qubit <= rho.nq:
        raise QubitIndexError(f"qubit {qubit} outside 1..{rho.nq}")
    reduced = rho if rho.nq == 1 else partial_trace(rho, (qubit,))
    return np.array([np.trace(SIGMA[k] @ reduced.entries).real for k in (1, 2, 3)])


def correlation_tensor(rho: DensityMatrix, q1: int, q2: int) -> np.ndarray:
    """C_ij = Tr[(σ_i on q1)(σ_j on q2) ρ]."""
    if q1 == q2 or not (1 <= q1 <= rho.nq and 1 <= q2 <= rho.nq):
        raise QubitIndexError(f"need two distinct qubits within 1..{rho.nq}, got ({q1}, {q2})")
    lo, hi = sorted((q1, q2))
    reduced = rho if rho.nq == 2 else partial_trace(rho, (lo, hi))
    tensor = np.empty((3, 3))
    for i, j in itertools.product(range(3), repeat=2):
        op = np.kron(SIGMA[i + 1], SIGMA[j + 1])
        tensor[i, j] = np.trace(op @ reduced.entries).real
    return tensor if q1 < q2 else tensor.T


def bloch_data(rho: DensityMatrix) -> BlochData:
    polarization = {q: bloch_vector(rho, q) for q in range(1, rho.nq + 1)}
    correlation = {
        (a, b): correlation_tensor(rho, a, b)
        for a, b in itertools.combinations(range(1, rho.nq + 1), 2)
    }
    return BlochData(polarization=polarization, correlation=correlation)


__all__ = [
    "DensityMatrix",
    "BlochData",
    "density_from_array",
    "pure_density",
    "maximally_mixed",
    "ensemble_average",
    "eigenvalues",
    "entropy",
    "purity",
    "fidelity",
    "fidelity_approx",
    "is_classical",
    "partial_trace",
    "subsystem_entropy",
    "bloch_vector",
    "correlation_tensor",
    "bloch_data",
]
