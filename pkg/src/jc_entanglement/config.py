"""Application configuration using Pydantic Settings."""

from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Values the acceptance suite is written against; looser settings are reported at startup.
ACCEPTANCE_TOLERANCES = {
    "spectrum_tolerance": 1e-9,
    "evolution_tolerance": 1e-9,
    "norm_tolerance": 1e-12,
    "conservation_tolerance": 1e-12,
    "lindblad_tolerance": 1e-6,
    "trace_tolerance": 1e-9,
}


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="JC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # App settings
    app_name: str = "JC Entanglement"
    log_level: str = "WARNING"

    # Truncation
    default_n_max: int = 2

    # Numerical tolerances
    spectrum_tolerance: float = 1e-9
    evolution_tolerance: float = 1e-9
    norm_tolerance: float = 1e-12
    conservation_tolerance: float = 1e-12
    lindblad_tolerance: float = 1e-6
    trace_tolerance: float = 1e-9
    trace_drift_limit: float = 1e-6
    positivity_drift_limit: float = 1e-7
    positivity_tolerance: float = 1e-10
    rank_cutoff: float = 1e-12

    # RK4 advisory threshold on dt * max|E_k|
    rk4_step_advisory: float = 0.1

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate that log_level names a standard logging level."""
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return level

    @field_validator("default_n_max")
    @classmethod
    def validate_default_n_max(cls, v: int) -> int:
        """Validate that the default truncation keeps at least one photon."""
        if v < 1:
            raise ValueError("JC_DEFAULT_N_MAX must be at least 1")
        return v

    def validate_runtime_config(self) -> list[str]:
        """Validate runtime configuration and return warnings."""
        warnings = []

        for name, target in ACCEPTANCE_TOLERANCES.items():
            value = getattr(self, name)
            if value > target:
                warnings.append(
                    f"{name.upper()}={value:g} is looser than the acceptance value {target:g}"
                )

        if self.default_n_max > 10:
            warnings.append(
                f"JC_DEFAULT_N_MAX={self.default_n_max} gives a "
                f"{4 * (self.default_n_max + 1) ** 2}-dimensional space - dense runs will be slow"
            )

        return warnings


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
