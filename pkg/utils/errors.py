"""
utils/errors.py
~~~~~~~~~~~~~~~~~~~~~~

Exception hierarchy for the simulator.

• `SimulationError` is the common base.
• `ConfigError` and its subclasses map to CLI exit status 1.
• `InvariantViolation` and its subclasses map to CLI exit status 2.
"""


class SimulationError(Exception):
    """Base class for every error raised by this package."""


class QubitIndexError(SimulationError, ValueError):
    """Qubit index out of range, or repeated where distinct qubits are required."""


class LabelError(SimulationError, ValueError):
    """Decimal index or bit label that does not describe a basis state."""


class ArityError(SimulationError, ValueError):
    """Gate arity does not match the number of qubits it is applied to."""


class DimensionError(SimulationError, ValueError):
    """Array shapes that do not fit together."""


class WeightError(SimulationError, ValueError):
    """Ensemble weights that are negative or do not sum to one."""


class NormalizationError(SimulationError):
    """State vector whose norm is not one within tolerance."""


class NonUnitaryGateError(SimulationError):
    """Gate matrix that fails the unitarity check."""


class InvariantViolation(SimulationError):
    """A numerical invariant (trace, hermiticity, positivity) no longer holds."""


class HermiticityError(InvariantViolation):
    """Matrix expected to be Hermitian is not."""


class UncorrectableError(SimulationError):
    """Error-correction input lies outside the correctable single-error subspace."""


class ConfigError(SimulationError):
    """Invalid experiment configuration."""


class ScheduleError(ConfigError):
    """Schedule that references unknown gates or qubits outside the register."""
