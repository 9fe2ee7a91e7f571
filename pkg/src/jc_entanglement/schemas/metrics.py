"""Pydantic schemas for entanglement metrics and sampled observables."""

from enum import IntEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from jc_entanglement.schemas.states import RealArray


class Factor(IntEnum):
    """Tensor factors of the composite space, in basis order."""

    MODE_A = 0
    ATOM_A = 1
    MODE_B = 2
    ATOM_B = 3


class Bipartition(BaseModel):
    """The factors kept when tracing out the rest."""

    model_config = ConfigDict(frozen=True)

    kept: frozenset[Factor] = Field(description="Kept tensor factors")

    @field_validator("kept")
    @classmethod
    def validate_proper(cls, v: frozenset[Factor]) -> frozenset[Factor]:
        """Validate the kept set is non-empty and proper."""
        if not v:
            raise ValueError("Bipartition must keep at least one factor")
        if len(v) == len(Factor):
            raise ValueError("Bipartition must trace out at least one factor")
        return v

    @property
    def ordered(self) -> tuple[Factor, ...]:
        """Kept factors in basis order."""
        return tuple(sorted(self.kept))

    def complement(self) -> "Bipartition":
        """The traced-out factors as a bipartition of their own."""
        return Bipartition(kept=frozenset(Factor) - self.kept)


ATOMS = Bipartition(kept=frozenset({Factor.ATOM_A, Factor.ATOM_B}))
PHOTONS = Bipartition(kept=frozenset({Factor.MODE_A, Factor.MODE_B}))
PAIR_A = Bipartition(kept=frozenset({Factor.MODE_A, Factor.ATOM_A}))
PAIR_B = Bipartition(kept=frozenset({Factor.MODE_B, Factor.ATOM_B}))


class TimeSeries(BaseModel):
    """Ordered (time, value) samples of a scalar observable."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: RealArray = Field(description="Strictly increasing sample times")
    values: RealArray = Field(description="Observable values")

    @model_validator(mode="after")
    def check_alignment(self) -> "TimeSeries":
        """Validate matching 1-D arrays with increasing times."""
        if self.times.ndim != 1 or self.times.shape != self.values.shape:
            raise ValueError("times and values must be 1-D arrays of equal length")
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        return self

    @property
    def spacing(self) -> float:
        """Mean sample spacing."""
        return float((self.times[-1] - self.times[0]) / (self.times.size - 1))

    def is_uniform(self, rtol: float = 1e-6) -> bool:
        """True when all spacings agree with the mean spacing."""
        steps = np.diff(self.times)
        return bool(np.allclose(steps, self.spacing, rtol=rtol, atol=0.0))


class EntanglementReport(BaseModel):
    """Entanglement metrics of the two-atom system at one time."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(description="Time in units of hbar / E_ref")
    concurrence_atoms: float = Field(ge=0.0, le=1.0, description="Wootters concurrence of the atoms")
    entropy_bits: float | None = Field(
        default=None, ge=0.0, description="Entropy across the A-pair | B-pair cut (pure states)"
    )
    p_joint_ground: float = Field(ge=0.0, le=1.0, description="Probability both atoms are ground")
