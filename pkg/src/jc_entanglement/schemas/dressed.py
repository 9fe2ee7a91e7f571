"""Pydantic schemas for dressed levels and closed-form evolution amplitudes."""

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from jc_entanglement.schemas.params import Subsystem
from jc_entanglement.schemas.states import StateVector

UNIT_TOLERANCE = 1e-12


class Sign(StrEnum):
    """Upper (+) or lower (-) member of a dressed doublet."""

    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1


class DressedLevel(BaseModel):
    """Dressed eigenpair |psi_n^(+/-)>_j of one atom-mode pair.

    The state is embedded in the composite basis with the other subsystem in
    its ground state |0;->, so it is also an eigenvector of the full
    Hamiltonian with eigenvalue ``energy + other_ground_energy``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=0, description="Excitation index")
    sign: Sign = Field(description="Doublet member")
    subsystem: Subsystem = Field(description="Subsystem carrying the excitation")
    energy: float = Field(description="Subsystem energy E_n^(+/-) in units of E_ref")
    other_ground_energy: float = Field(description="Ground energy of the spectator subsystem")
    cos_theta: float = Field(description="cos(theta_n)")
    sin_theta: float = Field(description="sin(theta_n)")
    state: StateVector = Field(description="Dressed state in the composite basis")

    @model_validator(mode="after")
    def check_unit_circle(self) -> "DressedLevel":
        """Validate cos^2 + sin^2 = 1."""
        radius = self.cos_theta**2 + self.sin_theta**2
        if abs(radius - 1.0) > UNIT_TOLERANCE:
            raise ValueError(f"Mixing amplitudes are not on the unit circle: {radius!r}")
        return self

    @property
    def total_energy(self) -> float:
        """Eigenvalue of the full two-subsystem Hamiltonian."""
        return self.energy + self.other_ground_energy


class EvolutionAmplitudes(BaseModel):
    """Closed-form state global_phase * (f |psi_alpha> + g |psi_beta>) at time t."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(description="Time in units of hbar / E_ref")
    f_amp: complex = Field(description="Amplitude on |psi_alpha>")
    g_amp: complex = Field(description="Amplitude on |psi_beta>")
    global_phase: complex = Field(description="exp(-i E' t)")

    @model_validator(mode="after")
    def check_unitarity(self) -> "EvolutionAmplitudes":
        """Validate |f|^2 + |g|^2 = 1 and a unimodular phase."""
        weight = abs(self.f_amp) ** 2 + abs(self.g_amp) ** 2
        if abs(weight - 1.0) > UNIT_TOLERANCE:
            raise ValueError(f"|f|^2 + |g|^2 = {weight!r}, expected 1")
        if not math.isclose(abs(self.global_phase), 1.0, abs_tol=UNIT_TOLERANCE):
            raise ValueError("Global phase must have unit modulus")
        return self

    @property
    def joint_ground_probability(self) -> float:
        """|f|^2, the weight left on the both-atoms-ground component."""
        return abs(self.f_amp) ** 2

    @property
    def entanglement_weight(self) -> float:
        """|g|^2, the weight on the atomic Bell component."""
        return abs(self.g_amp) ** 2
