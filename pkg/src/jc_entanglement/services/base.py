"""Exceptions shared by the simulation services."""


class SimulationError(Exception):
    """Base exception for simulation errors."""

    def __init__(self, message: str, exit_code: int = 1) -> None:
        super().__init__(message)
        self.exit_code = exit_code


class ConfigurationError(SimulationError):
    """Raised when a run cannot be configured as requested."""

    def __init__(self, message: str = "Invalid configuration") -> None:
        super().__init__(message, exit_code=2)


class InvalidParameterError(ConfigurationError):
    """Raised when physical parameters violate their invariants."""


class DegenerateLevelError(ConfigurationError):
    """Raised when the dressed-state splitting vanishes (epsilon = lambda = 0)."""

    def __init__(self, message: str = "Degenerate level: mixing angle undefined for q = 0"):
        super().__init__(message)


class TruncationError(ConfigurationError):
    """Raised when the Fock truncation is too small for a request."""


class BasisIndexError(SimulationError, IndexError):
    """Raised when a basis label or dense index is out of range."""


class ContractViolationError(SimulationError, ValueError):
    """Raised when an input breaks an operation's precondition."""


class NotPureError(ContractViolationError):
    """Raised when a pure state is required but a mixed one was given."""


class NoPeakError(SimulationError):
    """Raised when a time series has no usable peak or period."""


class IntegrationError(SimulationError):
    """Raised when the master-equation integrator drifts out of tolerance."""


class CheckFailedError(SimulationError):
    """Raised when an analytic-versus-oracle check exceeds its tolerance."""

    def __init__(self, message: str = "Check failed", failures: list[str] | None = None):
        super().__init__(message, exit_code=1)
        self.failures = failures or []
