"""Pytest fixtures and configuration."""

from collections.abc import Iterator

import pytest

from jc_entanglement.config import get_settings
from jc_entanglement.schemas.params import Subsystem, SubsystemParams, SystemParams


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Run every test against default settings, unaffected by the environment."""
    for name in ("JC_LOG_LEVEL", "JC_DEFAULT_N_MAX"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def resonant() -> SystemParams:
    """Equal subsystems at resonance with lambda = 1."""
    return SystemParams.symmetric(0.0, 1.0)


@pytest.fixture
def detuned() -> SystemParams:
    """Equal subsystems with eps = 0.3, lambda = 0.2 (q = 0.25)."""
    return SystemParams.symmetric(0.3, 0.2)


@pytest.fixture
def asymmetric() -> SystemParams:
    """Unequal subsystems (eps, lambda) = (0.1, 0.05) and (0.2, 0.1)."""
    return SystemParams.from_subsystems(
        SubsystemParams.from_dimensionless(0.1, 0.05),
        SubsystemParams.from_dimensionless(0.2, 0.1),
    )


@pytest.fixture
def detuned_pair(detuned: SystemParams) -> tuple[SubsystemParams, SubsystemParams]:
    """Subsystem parameters of the detuned system."""
    return detuned.subsystem(Subsystem.A), detuned.subsystem(Subsystem.B)
