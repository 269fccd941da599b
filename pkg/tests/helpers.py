"""Dense reference constructions used as oracles by the kernel tests."""

import numpy as np


def dense_operator(matrix: np.ndarray, qubits, nq: int) -> np.ndarray:
    """Full 2^nq×2^nq matrix of `matrix` acting on `qubits` (in argument order)."""
    k = len(qubits)
    rest = [q for q in range(1, nq + 1) if q not in qubits]
    order = list(qubits) + rest
    full = np.kron(matrix, np.eye(2 ** (nq - k)))
    # full acts on qubits permuted as `order`; undo the permutation on both sides
    perm = np.empty(2 ** nq, dtype=int)
    for n in range(2 ** nq):
        bits = [(n >> (nq - q)) & 1 for q in range(1, nq + 1)]
        permuted = [bits[q - 1] for q in order]
        perm[n] = int("".join(map(str, permuted)), 2)
    return full[np.ix_(perm, perm)]


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(nq: int, rng: np.random.Generator) -> np.ndarray:
    dim = 2 ** nq
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
