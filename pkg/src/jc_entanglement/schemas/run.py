"""Per-run configuration: dissipation settings and the CLI run config."""

from pathlib import Path
from typing import Any

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from jc_entanglement.schemas.params import SubsystemParams, SystemParams

PHYSICAL_FIELDS = ("e_atom_a", "e_atom_b", "omega_a", "omega_b", "kappa_a", "kappa_b")


class DissipationConfig(BaseModel):
    """Cavity-loss integration settings."""

    model_config = ConfigDict(frozen=True)

    gamma: float = Field(default=0.0, ge=0, description="Cavity loss rate (1 / time)")
    gamma_a: float | None = Field(default=None, ge=0, description="Loss rate of mode A")
    gamma_b: float | None = Field(default=None, ge=0, description="Loss rate of mode B")
    dt: float = Field(default=1e-3, gt=0, description="Maximum RK4 step")
    t_end: float = Field(default=1.0, ge=0, description="Final time")
    samples: int = Field(default=2, ge=2, description="Snapshots on [0, t_end], endpoints included")

    @property
    def rates(self) -> tuple[float, float]:
        """Per-mode loss rates, each defaulting to gamma."""
        return (
            self.gamma if self.gamma_a is None else self.gamma_a,
            self.gamma if self.gamma_b is None else self.gamma_b,
        )


class RunConfig(BaseSettings):
    """Configuration of one CLI invocation.

    Values come from an optional ``key=value`` file (``_env_file``) and from
    init arguments; init arguments (the command-line flags) win.
    """

    model_config = SettingsConfigDict(
        env_file=None,
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="forbid",
        populate_by_name=True,
    )

    # Physical parameters per subsystem
    e_atom_a: float | None = None
    e_atom_b: float | None = None
    omega_a: float | None = None
    omega_b: float | None = None
    kappa_a: float | None = None
    kappa_b: float | None = None

    # Equal-subsystem shorthand
    epsilon: float | None = None
    lam: float | None = Field(default=None, validation_alias=AliasChoices("lambda", "lam"))
    e_atom: float = Field(default=1.0, gt=0)

    # Truncation and time grid
    n_max: int | None = None
    t_start: float = 0.0
    t_end: float = 12.566370614359172
    samples: int = 801

    # Dissipation
    gamma: float = Field(default=0.0, ge=0)
    gamma_a: float | None = Field(default=None, ge=0)
    gamma_b: float | None = Field(default=None, ge=0)
    dt: float = Field(default=1e-3, gt=0)

    # Output and switches
    output: str = "-"
    check: bool = False
    levels: int | None = Field(default=None, ge=1)
    mutate_q_index: bool = False

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],  # noqa: ARG003
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,  # noqa: ARG003
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,  # noqa: ARG003
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Flags first, then the config file; the process environment is ignored."""
        return init_settings, dotenv_settings

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        """Validate grid, truncation and parameter-form exclusivity."""
        if self.n_max is not None and self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.samples < 2:
            raise ValueError("samples must be at least 2")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must be greater than t_start")

        physical = [name for name in PHYSICAL_FIELDS if getattr(self, name) is not None]
        dimensionless = self.epsilon is not None or self.lam is not None
        if physical and dimensionless:
            raise ValueError("Specify either physical parameters or --epsilon/--lambda, not both")
        if physical:
            a_fields = [f for f in PHYSICAL_FIELDS if f.endswith("_a")]
            b_fields = [f for f in PHYSICAL_FIELDS if f.endswith("_b")]
            missing_a = [f for f in a_fields if getattr(self, f) is None]
            given_b = [f for f in b_fields if getattr(self, f) is not None]
            if missing_a:
                raise ValueError(f"Missing physical parameters: {', '.join(missing_a)}")
            if given_b and len(given_b) != len(b_fields):
                missing_b = sorted(set(b_fields) - set(given_b))
                raise ValueError(f"Missing physical parameters: {', '.join(missing_b)}")

        if self.output != "-":
            parent = Path(self.output).expanduser().resolve().parent
            if not parent.is_dir():
                raise ValueError(f"Output directory does not exist: {parent}")
        return self

    def system_params(self) -> SystemParams:
        """Resolve the physical parameters of both subsystems.

        Without any parameter flags the resonant lambda = 1 convention is used.
        """
        if self.e_atom_a is not None:
            a = SubsystemParams(e_atom=self.e_atom_a, omega=self.omega_a, kappa=self.kappa_a)
            if self.e_atom_b is None:
                return SystemParams.from_subsystems(a, a)
            b = SubsystemParams(e_atom=self.e_atom_b, omega=self.omega_b, kappa=self.kappa_b)
            return SystemParams.from_subsystems(a, b)

        epsilon = 0.0 if self.epsilon is None else self.epsilon
        lam = 1.0 if self.lam is None else self.lam
        return SystemParams.symmetric(epsilon, lam, self.e_atom)

    def truncation(self, default: int) -> int:
        """Photon truncation, falling back to the application default."""
        return default if self.n_max is None else self.n_max

    def dissipation(self) -> DissipationConfig:
        """Dissipation settings for a trajectory sampled on this run's grid."""
        return DissipationConfig(
            gamma=self.gamma,
            gamma_a=self.gamma_a,
            gamma_b=self.gamma_b,
            dt=self.dt,
            t_end=self.t_end,
            samples=self.samples,
        )

    @classmethod
    def load(cls, config_file: str | None = None, **overrides: Any) -> "RunConfig":
        """Load a run config from an optional file, with flag overrides.

        Args:
            config_file: Path of a ``key=value`` file, or None.
            **overrides: Values given on the command line; None values are dropped.
        """
        values = {key: value for key, value in overrides.items() if value is not None}
        if config_file is not None and not Path(config_file).is_file():
            raise FileNotFoundError(f"Config file not found: {config_file}")
        return cls(_env_file=config_file, **values)
