"""Tests for parameter schemas and basis labels."""

import pytest
from pydantic import ValidationError

from jc_entanglement.schemas.params import (
    AtomState,
    BasisLabel,
    Subsystem,
    SubsystemParams,
    SystemParams,
)


class TestSubsystemParams:
    """Tests for single-pair parameters."""

    def test_from_dimensionless(self) -> None:
        """Test omega = E(1 + eps) and kappa = lambda E."""
        params = SubsystemParams.from_dimensionless(0.3, 0.2, e_atom=2.0)
        assert params.omega == pytest.approx(2.6)
        assert params.kappa == pytest.approx(0.4)
        assert params.epsilon == pytest.approx(0.3)
        assert params.lam == pytest.approx(0.2)

    def test_non_positive_splitting_rejected(self) -> None:
        """Test that E <= 0 fails validation."""
        with pytest.raises(ValidationError):
            SubsystemParams(e_atom=0.0, omega=1.0, kappa=0.1)

    def test_detuning_below_minus_one_rejected(self) -> None:
        """Test that eps < -1 gives a negative frequency and fails validation."""
        with pytest.raises(ValidationError):
            SubsystemParams.from_dimensionless(-1.5, 0.1)

    def test_negative_coupling_allowed(self) -> None:
        """Test that the coupling may carry either sign."""
        assert SubsystemParams.from_dimensionless(0.0, -0.5).lam == -0.5


class TestSystemParams:
    """Tests for two-subsystem parameters."""

    def test_symmetric(self) -> None:
        """Test that equal subsystems are detected."""
        params = SystemParams.symmetric(0.3, 0.2)
        assert params.is_symmetric
        assert params.subsystem(Subsystem.A) == params.subsystem(Subsystem.B)

    def test_asymmetric(self, asymmetric: SystemParams) -> None:
        """Test that per-subsystem values survive the round trip."""
        assert not asymmetric.is_symmetric
        assert asymmetric.subsystem(Subsystem.B).lam == pytest.approx(0.1)

    def test_frozen(self) -> None:
        """Test that parameters cannot be modified."""
        params = SystemParams.symmetric(0.0, 1.0)
        with pytest.raises(ValidationError):
            params.kappa_a = 2.0


class TestBasisLabel:
    """Tests for product-basis labels."""

    def test_accepts_letter_spellings(self) -> None:
        """Test that g/e spellings map to the atomic states."""
        label = BasisLabel(n_a=1, s_a="g", n_b=0, s_b="e")
        assert label.s_a is AtomState.GROUND
        assert label.s_b is AtomState.EXCITED

    def test_str(self) -> None:
        """Test the ket rendering."""
        label = BasisLabel(n_a=0, s_a="+", n_b=1, s_b="-")
        assert str(label) == "|0;+>_A|1;->_B"

    def test_negative_photons_rejected(self) -> None:
        """Test that photon counts must be non-negative."""
        with pytest.raises(ValidationError):
            BasisLabel(n_a=-1, s_a="-", n_b=0, s_b="-")
