"""Tests for the cavity-loss master equation."""

import logging
import math

import numpy as np
import pytest

from jc_entanglement.config import get_settings
from jc_entanglement.schemas.params import Subsystem, SubsystemParams, SystemParams
from jc_entanglement.schemas.run import DissipationConfig
from jc_entanglement.schemas.states import DensityOperator, MatrixOperator
from jc_entanglement.services import lindblad, oracle
from jc_entanglement.services.base import ContractViolationError, IntegrationError
from jc_entanglement.services.model_core import (
    OperatorKind,
    build_operator,
    expectation,
    ground_state,
    phi_state,
    psi_alpha,
)

UNCOUPLED = SubsystemParams(e_atom=1.0, omega=1.2, kappa=0.0)


@pytest.fixture
def uncoupled_hamiltonian() -> MatrixOperator:
    """Free photons and atoms at n_max = 1."""
    return oracle.build_hamiltonian(UNCOUPLED, UNCOUPLED, 1)


@pytest.fixture
def resonant_hamiltonian(resonant: SystemParams) -> MatrixOperator:
    """Resonant lambda = 1 Hamiltonian at n_max = 1."""
    return oracle.build_hamiltonian(
        resonant.subsystem(Subsystem.A), resonant.subsystem(Subsystem.B), 1
    )


class TestLindbladRhs:
    """Tests for the master-equation right-hand side."""

    def test_closed_system_is_commutator(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test d rho / dt = -i [H, rho] for gamma = 0."""
        rho = DensityOperator.from_state(psi_alpha(1))
        rhs = lindblad.lindblad_rhs(rho, resonant_hamiltonian, lindblad.loss_operators(1), 0.0)
        h = resonant_hamiltonian.entries
        expected = -1j * (h @ rho.entries - rho.entries @ h)
        np.testing.assert_allclose(rhs.entries, expected, atol=1e-15)

    def test_vacuum_is_stationary(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test that the joint ground state neither evolves nor decays."""
        rho = DensityOperator.from_state(ground_state(1))
        rhs = lindblad.lindblad_rhs(rho, uncoupled_hamiltonian, lindblad.loss_operators(1), 0.7)
        assert np.max(np.abs(rhs.entries)) < 1e-15

    def test_photon_decay_rate(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test d<N_A>/dt = -gamma for one photon in mode A."""
        rho = DensityOperator.from_state(phi_state(2, 1))
        rhs = lindblad.lindblad_rhs(rho, uncoupled_hamiltonian, lindblad.loss_operators(1), 0.4)
        number = build_operator(OperatorKind.NUMBER, Subsystem.A, 1).entries
        assert np.trace(number @ rhs.entries).real == pytest.approx(-0.4)

    def test_traceless_and_hermitian(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test that the derivative keeps rho Hermitian with unit trace."""
        rho = DensityOperator.from_state(psi_alpha(1))
        rhs = lindblad.lindblad_rhs(
            rho, resonant_hamiltonian, lindblad.loss_operators(1), [0.3, 0.1]
        )
        assert abs(np.trace(rhs.entries)) < 1e-14
        assert rhs.hermiticity_defect() < 1e-14

    def test_per_mode_rates(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test that a zero rate on mode A leaves its photon alone."""
        rho = DensityOperator.from_state(phi_state(2, 1))
        rhs = lindblad.lindblad_rhs(
            rho, uncoupled_hamiltonian, lindblad.loss_operators(1), [0.0, 0.9]
        )
        assert np.max(np.abs(rhs.entries)) < 1e-15

    def test_negative_rate_rejected(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test that a negative loss rate is rejected."""
        rho = DensityOperator.from_state(ground_state(1))
        with pytest.raises(ContractViolationError):
            lindblad.lindblad_rhs(rho, uncoupled_hamiltonian, lindblad.loss_operators(1), -0.1)

    def test_rate_count_checked(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test that per-channel rates must match the loss operators."""
        rho = DensityOperator.from_state(ground_state(1))
        with pytest.raises(ContractViolationError):
            lindblad.lindblad_rhs(
                rho, uncoupled_hamiltonian, lindblad.loss_operators(1), [0.1, 0.1, 0.1]
            )

    def test_dimension_mismatch(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test that rho and H must share a truncation."""
        rho = DensityOperator.from_state(ground_state(2))
        with pytest.raises(ContractViolationError):
            lindblad.lindblad_rhs(rho, uncoupled_hamiltonian, lindblad.loss_operators(1), 0.1)


class TestIntegrate:
    """Tests for RK4 integration."""

    def test_zero_duration(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test that t_end = 0 returns the initial state alone."""
        rho0 = DensityOperator.from_state(psi_alpha(1))
        trajectory = lindblad.integrate(rho0, resonant_hamiltonian, DissipationConfig(t_end=0.0))
        assert len(trajectory) == 1
        assert trajectory[0].t == 0.0
        assert trajectory[0].rho is rho0

    def test_sample_grid(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test evenly spaced snapshots including both endpoints."""
        rho0 = DensityOperator.from_state(psi_alpha(1))
        config = DissipationConfig(gamma=0.1, dt=0.01, t_end=1.0, samples=5)
        trajectory = lindblad.integrate(rho0, resonant_hamiltonian, config)
        assert [snapshot.t for snapshot in trajectory] == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])

    def test_exponential_photon_decay(self, uncoupled_hamiltonian: MatrixOperator) -> None:
        """Test <N_A>(t) = exp(-gamma t) for a free photon."""
        rho0 = DensityOperator.from_state(phi_state(2, 1))
        config = DissipationConfig(gamma=0.5, dt=0.01, t_end=2.0, samples=5)
        trajectory = lindblad.integrate(rho0, uncoupled_hamiltonian, config)
        photons = lindblad.photon_expectations(trajectory)
        for snapshot, (n_a, n_b) in zip(trajectory, photons, strict=True):
            assert n_a == pytest.approx(math.exp(-0.5 * snapshot.t), abs=1e-8)
            assert n_b == pytest.approx(0.0, abs=1e-15)
        assert photons[-1][0] == pytest.approx(math.exp(-1.0), abs=1e-8)

    def test_closed_system_matches_oracle(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test gamma = 0 integration against exact unitary evolution."""
        rho0 = DensityOperator.from_state(psi_alpha(1))
        config = DissipationConfig(gamma=0.0, dt=0.01, t_end=2.0, samples=3)
        trajectory = lindblad.integrate(rho0, resonant_hamiltonian, config)
        for snapshot in trajectory:
            exact = oracle.evolve_exact(psi_alpha(1), resonant_hamiltonian, snapshot.t)
            deviation = np.max(np.abs(snapshot.rho.entries - exact.projector()))
            assert deviation < 1e-6

    def test_excitations_decrease(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test that the total excitation number never grows under loss."""
        rho0 = DensityOperator.from_state(psi_alpha(1))
        config = DissipationConfig(gamma=0.3, dt=0.01, t_end=3.0, samples=13)
        trajectory = lindblad.integrate(rho0, resonant_hamiltonian, config)
        excitation = build_operator(OperatorKind.EXCITATION, Subsystem.A, 1) + build_operator(
            OperatorKind.EXCITATION, Subsystem.B, 1
        )
        totals = [expectation(excitation, snapshot.rho) for snapshot in trajectory]
        assert totals[0] == pytest.approx(1.0)
        assert all(later <= earlier + 1e-12 for earlier, later in zip(totals, totals[1:], strict=False))
        assert totals[-1] < 0.8

    def test_trace_preserved(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test unit trace at every snapshot."""
        rho0 = DensityOperator.from_state(psi_alpha(1))
        config = DissipationConfig(gamma=0.5, dt=0.01, t_end=1.0, samples=3)
        for snapshot in lindblad.integrate(rho0, resonant_hamiltonian, config):
            assert snapshot.rho.trace == pytest.approx(1.0, abs=1e-12)

    def test_dims_checked(self, resonant_hamiltonian: MatrixOperator) -> None:
        """Test that rho0 must live on the Hamiltonian's truncation."""
        rho0 = DensityOperator.from_state(psi_alpha(2))
        with pytest.raises(ContractViolationError):
            lindblad.integrate(rho0, resonant_hamiltonian, DissipationConfig(t_end=1.0))

    def test_large_step_warns(
        self, resonant_hamiltonian: MatrixOperator, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test the advisory warning when dt * max|E_k| is large."""
        rho0 = DensityOperator.from_state(psi_alpha(1))
        config = DissipationConfig(dt=0.5, t_end=0.5, samples=2)
        with caplog.at_level(logging.WARNING, logger="jc_entanglement.services.lindblad"):
            lindblad.integrate(rho0, resonant_hamiltonian, config)
        assert "RK4 accuracy" in caplog.text

    def test_drift_limit_raises(
        self, resonant_hamiltonian: MatrixOperator, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that trace drift beyond the configured limit aborts integration."""
        monkeypatch.setenv("JC_TRACE_DRIFT_LIMIT", "-1")
        get_settings.cache_clear()
        rho0 = DensityOperator.from_state(psi_alpha(1))
        with pytest.raises(IntegrationError, match="Trace drifted"):
            lindblad.integrate(
                rho0, resonant_hamiltonian, DissipationConfig(dt=0.1, t_end=0.1, samples=2)
            )

    def test_positive_along_lossy_trajectory(self, resonant: SystemParams) -> None:
        """Test that every snapshot of a lossy run stays positive semidefinite."""
        hamiltonian = oracle.build_hamiltonian(
            resonant.subsystem(Subsystem.A), resonant.subsystem(Subsystem.B), 2
        )
        rho0 = DensityOperator.from_state(psi_alpha(2))
        config = DissipationConfig(gamma=0.3, dt=0.01, t_end=6.0, samples=61)
        for snapshot in lindblad.integrate(rho0, hamiltonian, config):
            assert np.linalg.eigvalsh(snapshot.rho.entries)[0] > -1e-7

    def test_positivity_drift_limit_raises(
        self, resonant_hamiltonian: MatrixOperator, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that an eigenvalue below the positivity drift limit aborts integration."""
        monkeypatch.setenv("JC_POSITIVITY_DRIFT_LIMIT", "-1")
        get_settings.cache_clear()
        rho0 = DensityOperator.from_state(psi_alpha(1))
        with pytest.raises(IntegrationError, match="lost positivity"):
            lindblad.integrate(
                rho0, resonant_hamiltonian, DissipationConfig(dt=0.1, t_end=0.1, samples=2)
            )


class TestPhotonExpectations:
    """Tests for per-mode photon numbers."""

    def test_empty_trajectory(self) -> None:
        """Test that an empty trajectory gives no expectations."""
        assert lindblad.photon_expectations([]) == []

    def test_initial_snapshot(self) -> None:
        """Test half a photon per mode in psi_alpha."""
        snapshot = lindblad.Snapshot(t=0.0, rho=DensityOperator.from_state(psi_alpha(2)))
        ((n_a, n_b),) = lindblad.photon_expectations([snapshot])
        assert n_a == pytest.approx(0.5)
        assert n_b == pytest.approx(0.5)
