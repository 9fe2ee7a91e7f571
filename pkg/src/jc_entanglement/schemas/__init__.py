"""Pydantic schemas for parameters, states, metrics and run configuration."""

from jc_entanglement.schemas.dressed import DressedLevel, EvolutionAmplitudes, Sign
from jc_entanglement.schemas.metrics import (
    ATOMS,
    PAIR_A,
    PAIR_B,
    PHOTONS,
    Bipartition,
    EntanglementReport,
    Factor,
    TimeSeries,
)
from jc_entanglement.schemas.params import (
    AtomState,
    BasisLabel,
    DimensionlessParams,
    Subsystem,
    SubsystemParams,
    SystemParams,
)
from jc_entanglement.schemas.run import DissipationConfig, RunConfig
from jc_entanglement.schemas.states import (
    DensityOperator,
    MatrixOperator,
    Spectrum,
    StateVector,
)
from jc_entanglement.schemas.verification import CheckResult, VerificationReport

__all__ = [
    # Parameters and labels
    "AtomState",
    "BasisLabel",
    "DimensionlessParams",
    "Subsystem",
    "SubsystemParams",
    "SystemParams",
    # States and operators
    "DensityOperator",
    "MatrixOperator",
    "Spectrum",
    "StateVector",
    # Dressed levels
    "DressedLevel",
    "EvolutionAmplitudes",
    "Sign",
    # Metrics
    "ATOMS",
    "PAIR_A",
    "PAIR_B",
    "PHOTONS",
    "Bipartition",
    "EntanglementReport",
    "Factor",
    "TimeSeries",
    # Run configuration
    "DissipationConfig",
    "RunConfig",
    # Verification
    "CheckResult",
    "VerificationReport",
]
