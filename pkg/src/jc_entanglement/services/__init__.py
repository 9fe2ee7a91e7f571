"""Closed-form solutions, the Fock-space oracle, metrics and the master equation."""

from jc_entanglement.services.base import (
    BasisIndexError,
    CheckFailedError,
    ConfigurationError,
    ContractViolationError,
    DegenerateLevelError,
    IntegrationError,
    InvalidParameterError,
    NoPeakError,
    NotPureError,
    SimulationError,
    TruncationError,
)
from jc_entanglement.services.verification import mutated_q_index, run_verification

__all__ = [
    "BasisIndexError",
    "CheckFailedError",
    "ConfigurationError",
    "ContractViolationError",
    "DegenerateLevelError",
    "IntegrationError",
    "InvalidParameterError",
    "NoPeakError",
    "NotPureError",
    "SimulationError",
    "TruncationError",
    "mutated_q_index",
    "run_verification",
]
