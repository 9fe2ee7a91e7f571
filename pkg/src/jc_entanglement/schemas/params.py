"""Pydantic schemas for physical parameters and basis labels."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Subsystem(StrEnum):
    """One atom together with the photon mode it couples to."""

    A = "A"
    B = "B"


class AtomState(StrEnum):
    """Atomic level; ground sorts before excited in the dense basis."""

    GROUND = "-"
    EXCITED = "+"

    @property
    def index(self) -> int:
        """Position of the level inside the two-dimensional atomic factor."""
        return 0 if self is AtomState.GROUND else 1


class SubsystemParams(BaseModel):
    """Physical parameters of a single atom-mode pair (hbar = 1)."""

    model_config = ConfigDict(frozen=True)

    e_atom: float = Field(gt=0, description="Atomic level splitting E_j in units of E_ref")
    omega: float = Field(ge=0, description="Mode angular frequency omega_j (energy units)")
    kappa: float = Field(allow_inf_nan=False, description="Atom-mode coupling kappa_j")

    @classmethod
    def from_dimensionless(
        cls, epsilon: float, lam: float, e_atom: float = 1.0
    ) -> "SubsystemParams":
        """Build physical parameters from detuning and coupling ratio.

        Args:
            epsilon: Detuning, hbar*omega / E - 1.
            lam: Coupling ratio, hbar*kappa / E.
            e_atom: Atomic splitting in units of E_ref.
        """
        return cls(e_atom=e_atom, omega=e_atom * (1.0 + epsilon), kappa=lam * e_atom)

    @property
    def epsilon(self) -> float:
        """Detuning parameter."""
        return self.omega / self.e_atom - 1.0

    @property
    def lam(self) -> float:
        """Dimensionless coupling."""
        return self.kappa / self.e_atom


class SystemParams(BaseModel):
    """Physical parameters for both subsystems."""

    model_config = ConfigDict(frozen=True)

    e_atom_a: float = Field(gt=0, description="Atomic splitting of atom A")
    e_atom_b: float = Field(gt=0, description="Atomic splitting of atom B")
    omega_a: float = Field(ge=0, description="Angular frequency of mode A")
    omega_b: float = Field(ge=0, description="Angular frequency of mode B")
    kappa_a: float = Field(allow_inf_nan=False, description="Coupling of atom A to mode A")
    kappa_b: float = Field(allow_inf_nan=False, description="Coupling of atom B to mode B")

    @classmethod
    def from_subsystems(cls, a: SubsystemParams, b: SubsystemParams) -> "SystemParams":
        """Combine two per-subsystem parameter sets."""
        return cls(
            e_atom_a=a.e_atom,
            e_atom_b=b.e_atom,
            omega_a=a.omega,
            omega_b=b.omega,
            kappa_a=a.kappa,
            kappa_b=b.kappa,
        )

    @classmethod
    def symmetric(cls, epsilon: float, lam: float, e_atom: float = 1.0) -> "SystemParams":
        """Equal subsystems, the special case of identical atoms and modes."""
        sub = SubsystemParams.from_dimensionless(epsilon, lam, e_atom)
        return cls.from_subsystems(sub, sub)

    def subsystem(self, which: Subsystem) -> SubsystemParams:
        """Return the parameters of one subsystem."""
        if which is Subsystem.A:
            return SubsystemParams(e_atom=self.e_atom_a, omega=self.omega_a, kappa=self.kappa_a)
        return SubsystemParams(e_atom=self.e_atom_b, omega=self.omega_b, kappa=self.kappa_b)

    @property
    def is_symmetric(self) -> bool:
        """True when both subsystems carry identical parameters."""
        return (
            self.e_atom_a == self.e_atom_b
            and self.omega_a == self.omega_b
            and self.kappa_a == self.kappa_b
        )


class DimensionlessParams(BaseModel):
    """Detuning and coupling ratio of both subsystems."""

    model_config = ConfigDict(frozen=True)

    epsilon_a: float = Field(description="Detuning of subsystem A")
    epsilon_b: float = Field(description="Detuning of subsystem B")
    lambda_a: float = Field(description="Coupling ratio of subsystem A")
    lambda_b: float = Field(description="Coupling ratio of subsystem B")

    def subsystem(self, which: Subsystem) -> tuple[float, float]:
        """Return (epsilon, lambda) for one subsystem."""
        if which is Subsystem.A:
            return self.epsilon_a, self.lambda_a
        return self.epsilon_b, self.lambda_b


class BasisLabel(BaseModel):
    """Product-basis label |n_A, s_A> (x) |n_B, s_B>."""

    model_config = ConfigDict(frozen=True)

    n_a: int = Field(ge=0, description="Photon count in mode A")
    s_a: AtomState = Field(description="State of atom A")
    n_b: int = Field(ge=0, description="Photon count in mode B")
    s_b: AtomState = Field(description="State of atom B")

    @field_validator("s_a", "s_b", mode="before")
    @classmethod
    def coerce_sign(cls, v: object) -> object:
        """Accept the spellings '-'/'+' and 'g'/'e' for atomic states."""
        if isinstance(v, str) and v.lower() in ("g", "ground"):
            return AtomState.GROUND
        if isinstance(v, str) and v.lower() in ("e", "excited"):
            return AtomState.EXCITED
        return v

    def __str__(self) -> str:
        return f"|{self.n_a};{self.s_a.value}>_A|{self.n_b};{self.s_b.value}>_B"
