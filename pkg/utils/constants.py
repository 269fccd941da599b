# utils/constants.py

import numpy as np

# Normalization check for state vectors.
NORM_TOL = 1e-10

# Unitarity check for built-in gates.
UNITARY_TOL = 1e-12

# Trace / hermiticity checks for density matrices.
DENSITY_TOL = 1e-10

# Eigenvalues below -NEGATIVE_EIG_TOL are a real defect, not round-off.
NEGATIVE_EIG_TOL = 1e-8

# Probability weights must sum to one within this.
WEIGHT_TOL = 1e-12

# Branch probabilities below this count as "definitely not this outcome".
DEFINITE_TOL = 1e-12

# Pauli matrices sigma_0..sigma_3 (identity, x, y, z).
SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# Default schedule lengths per experiment.
DEFAULT_STEPS = {"mv1": 30, "mv2": 50, "mvn": 40, "custom": 20}

DEFAULT_PATHS = 8

# Eigenvalues below this are round-off from rank-deficient products and are
# zeroed before square roots (√1e-17 would otherwise leak ~3e-9 per eigenvalue).
SPECTRAL_CUTOFF = 1e-13
