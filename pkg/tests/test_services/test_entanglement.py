"""Tests for entanglement metrics and timing extraction."""

import math

import numpy as np
import pytest

from jc_entanglement.schemas.metrics import ATOMS, PAIR_A, PAIR_B, PHOTONS, TimeSeries
from jc_entanglement.schemas.params import BasisLabel, SubsystemParams
from jc_entanglement.schemas.states import DensityOperator
from jc_entanglement.services import analytic, entanglement
from jc_entanglement.services.base import ContractViolationError, NoPeakError, NotPureError
from jc_entanglement.services.model_core import (
    ground_state,
    product_state,
    psi_alpha,
    psi_beta,
)

BELL_PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)


def two_qubit(vector: np.ndarray) -> DensityOperator:
    return DensityOperator(entries=np.outer(vector, vector.conj()), dims=(2, 2))


class TestPartialTrace:
    """Tests for reduced density operators."""

    def test_product_state_atoms(self) -> None:
        """Test that the atoms of |G> are both in the ground state."""
        rho = entanglement.partial_trace(ground_state(2), ATOMS)
        assert rho.dims == (2, 2)
        assert rho.entries[0, 0] == pytest.approx(1.0)

    def test_state_and_density_agree(self) -> None:
        """Test that reducing a vector and its projector give the same result."""
        state = analytic.evolve_general(
            1.3,
            SubsystemParams.from_dimensionless(0.1, 0.3),
            SubsystemParams.from_dimensionless(0.2, 0.4),
            2,
        )
        for cut in (ATOMS, PHOTONS, PAIR_A):
            from_state = entanglement.partial_trace(state, cut)
            from_density = entanglement.partial_trace(DensityOperator.from_state(state), cut)
            np.testing.assert_allclose(from_state.entries, from_density.entries, atol=1e-14)

    def test_psi_beta_atoms(self) -> None:
        """Test that psi_beta leaves the atoms in (|-+> + |+->) / sqrt(2)."""
        rho = entanglement.partial_trace(psi_beta(1), ATOMS).entries
        expected = np.zeros((4, 4))
        expected[1:3, 1:3] = 0.5
        np.testing.assert_allclose(rho, expected, atol=1e-15)

    def test_wrong_factor_count(self) -> None:
        """Test that a two-factor operator cannot be cut as a composite one."""
        with pytest.raises(ContractViolationError):
            entanglement.partial_trace(two_qubit(BELL_PHI_PLUS), ATOMS)


class TestConcurrence:
    """Tests for Wootters concurrence."""

    def test_bell_state(self) -> None:
        """Test concurrence 1 for a Bell state."""
        assert entanglement.concurrence(two_qubit(BELL_PHI_PLUS)) == pytest.approx(1.0)

    def test_product_state(self) -> None:
        """Test concurrence 0 for a product state."""
        assert entanglement.concurrence(two_qubit(np.array([1.0, 0.0, 0.0, 0.0]))) == 0.0

    def test_maximally_mixed(self) -> None:
        """Test concurrence 0 for the maximally mixed state."""
        rho = DensityOperator(entries=np.eye(4) / 4, dims=(2, 2))
        assert entanglement.concurrence(rho) == 0.0

    def test_werner_state(self) -> None:
        """Test C = max(0, (3p - 1) / 2) for a Werner state."""
        p = 0.8
        entries = p * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS) + (1 - p) * np.eye(4) / 4
        rho = DensityOperator(entries=entries, dims=(2, 2))
        assert entanglement.concurrence(rho) == pytest.approx(0.7, abs=1e-12)

    def test_psi_beta_atoms(self) -> None:
        """Test that the atomic Bell component of psi_beta is maximally entangled."""
        rho = entanglement.partial_trace(psi_beta(2), ATOMS)
        assert entanglement.concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_wrong_dimension(self) -> None:
        """Test that a non-4x4 operator is rejected."""
        rho = DensityOperator(entries=np.eye(3) / 3, dims=(3,))
        with pytest.raises(ContractViolationError):
            entanglement.concurrence(rho)

    def test_detuned_peak_value(self) -> None:
        """Test C = sin^2(2 theta) = 0.64 at t = pi / (2q) for eps = 0.3, lambda = 0.2."""
        state = analytic.amplitudes_to_state(
            analytic.evolve_detuned_special(2.0 * math.pi, 0.3, 0.2), 2
        )
        rho = entanglement.partial_trace(state, ATOMS)
        assert entanglement.concurrence(rho) == pytest.approx(0.64, abs=1e-9)

    @pytest.mark.parametrize(
        ("evolve", "t_end"),
        [
            (lambda t: analytic.evolve_resonant(t, 1.0), 2.0 * math.pi),
            (lambda t: analytic.evolve_detuned_special(t, 0.3, 0.2), 8.0 * math.pi),
        ],
        ids=["resonant", "detuned"],
    )
    def test_equals_entanglement_weight(self, evolve, t_end: float) -> None:
        """Test C(t) = |g(t)|^2 along two full state periods."""
        for t in np.linspace(0.0, 2.0 * t_end, 200):
            amplitudes = evolve(float(t))
            rho = entanglement.partial_trace(analytic.amplitudes_to_state(amplitudes, 2), ATOMS)
            assert entanglement.concurrence(rho) == pytest.approx(
                abs(amplitudes.g_amp) ** 2, abs=1e-9
            )


class TestSchmidtSpectra:
    """Tests for the reduced spectra on complementary cuts of a pure state."""

    @staticmethod
    def spectra(state, cut, complement, rank: int) -> tuple[np.ndarray, np.ndarray]:
        left = np.linalg.eigvalsh(entanglement.partial_trace(state, cut).entries)[::-1]
        right = np.linalg.eigvalsh(entanglement.partial_trace(state, complement).entries)[::-1]
        assert np.all(np.abs(left[rank:]) < 1e-12)
        assert np.all(np.abs(right[rank:]) < 1e-12)
        return left[:rank], right[:rank]

    @pytest.mark.parametrize("t", [0.0, 0.7, 2.0 * math.pi, 11.3])
    def test_atoms_and_photons(self, t: float) -> None:
        """Test that the atoms and the photons share one non-zero spectrum."""
        state = analytic.amplitudes_to_state(analytic.evolve_detuned_special(t, 0.3, 0.2), 2)
        atoms, photons = self.spectra(state, ATOMS, PHOTONS, 4)
        np.testing.assert_allclose(atoms, photons, atol=1e-12)

    @pytest.mark.parametrize("t", [0.0, 0.7, 2.0 * math.pi, 11.3])
    def test_pair_a_and_pair_b(self, t: float) -> None:
        """Test that the two atom-mode pairs share one spectrum."""
        state = analytic.evolve_general(
            t,
            SubsystemParams.from_dimensionless(0.1, 0.3),
            SubsystemParams.from_dimensionless(0.2, 0.4),
            2,
        )
        pair_a, pair_b = self.spectra(state, PAIR_A, PAIR_B, 6)
        np.testing.assert_allclose(pair_a, pair_b, atol=1e-12)


class TestPeriodicity:
    """Tests that metrics repeat with the state period."""

    @pytest.mark.parametrize(
        ("evolve", "period"),
        [
            (lambda t: analytic.evolve_resonant(t, 1.0), 2.0 * math.pi),
            (lambda t: analytic.evolve_detuned_special(t, 0.3, 0.2), 8.0 * math.pi),
        ],
        ids=["resonant", "detuned"],
    )
    @pytest.mark.parametrize("t", [0.0, 0.4, 1.9, 5.0])
    def test_report_repeats(self, evolve, period: float, t: float) -> None:
        """Test identical metrics at t and t + T."""
        now = entanglement.entanglement_report(
            t, analytic.amplitudes_to_state(evolve(t), 2)
        )
        later = entanglement.entanglement_report(
            t + period, analytic.amplitudes_to_state(evolve(t + period), 2)
        )
        assert later.concurrence_atoms == pytest.approx(now.concurrence_atoms, abs=1e-9)
        assert later.entropy_bits == pytest.approx(now.entropy_bits, abs=1e-9)
        assert later.p_joint_ground == pytest.approx(now.p_joint_ground, abs=1e-9)


class TestEntropy:
    """Tests for entanglement entropy."""

    def test_product_state_zero(self) -> None:
        """Test zero entropy for a product state."""
        assert entanglement.entanglement_entropy(ground_state(1), PAIR_A) == pytest.approx(0.0)

    def test_psi_alpha_one_bit(self) -> None:
        """Test that the shared photon carries one bit across the pair cut."""
        assert entanglement.entanglement_entropy(psi_alpha(1), PAIR_A) == pytest.approx(1.0)

    def test_cut_is_symmetric(self) -> None:
        """Test S(A-pair) = S(B-pair) for a pure state."""
        state = analytic.amplitudes_to_state(analytic.evolve_detuned_special(3.0, 0.3, 0.2), 2)
        assert entanglement.entanglement_entropy(state, PAIR_A) == pytest.approx(
            entanglement.entanglement_entropy(state, PAIR_B)
        )

    def test_pure_density_accepted(self) -> None:
        """Test that a pure density operator is accepted."""
        rho = DensityOperator.from_state(psi_alpha(1))
        assert entanglement.entanglement_entropy(rho, PAIR_A) == pytest.approx(1.0)

    def test_mixed_density_rejected(self) -> None:
        """Test that a mixed state is rejected."""
        mixed = 0.5 * (psi_alpha(1).projector() + psi_beta(1).projector())
        rho = DensityOperator(entries=mixed, dims=(2, 2, 2, 2))
        with pytest.raises(NotPureError):
            entanglement.entanglement_entropy(rho, PAIR_A)

    def test_von_neumann_mixed_qubit(self) -> None:
        """Test one bit for a maximally mixed qubit."""
        rho = DensityOperator(entries=np.eye(2) / 2, dims=(2,))
        assert entanglement.von_neumann_entropy(rho) == pytest.approx(1.0)


class TestProbabilities:
    """Tests for atomic populations."""

    def test_joint_ground(self) -> None:
        """Test p = 1 for psi_alpha and p = 0 for psi_beta."""
        assert entanglement.joint_ground_probability(psi_alpha(2)) == pytest.approx(1.0)
        assert entanglement.joint_ground_probability(psi_beta(2)) == pytest.approx(0.0)

    def test_populations_complete(self) -> None:
        """Test that joint-ground and single-excitation probabilities add to one in V."""
        state = analytic.amplitudes_to_state(analytic.evolve_detuned_special(4.1, 0.3, 0.2), 2)
        total = entanglement.joint_ground_probability(
            state
        ) + entanglement.single_excitation_probability(state)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_both_excited(self) -> None:
        """Test that a doubly excited state has no single excitation."""
        state = product_state([(BasisLabel(n_a=0, s_a="+", n_b=0, s_b="+"), 1.0)], 1)
        assert entanglement.single_excitation_probability(state) == 0.0


class TestReport:
    """Tests for the combined entanglement report."""

    def test_state_report(self) -> None:
        """Test the metrics of psi_beta."""
        report = entanglement.entanglement_report(0.5, psi_beta(2))
        assert report.t == 0.5
        assert report.concurrence_atoms == pytest.approx(1.0)
        assert report.entropy_bits == pytest.approx(1.0)
        assert report.p_joint_ground == pytest.approx(0.0)

    def test_density_report_has_no_entropy(self) -> None:
        """Test that density inputs leave the entropy empty."""
        report = entanglement.entanglement_report(0.0, DensityOperator.from_state(psi_alpha(1)))
        assert report.entropy_bits is None
        assert report.concurrence_atoms == 0.0


class TestPeakAndPeriod:
    """Tests for timing extraction."""

    def test_sine_squared(self) -> None:
        """Test peak pi / 2 and period pi for sin^2(t)."""
        times = np.linspace(0.0, 4.0 * math.pi, 801)
        series = TimeSeries(times=times, values=np.sin(times) ** 2)
        result = entanglement.find_peak_and_period(series)
        spacing = times[1] - times[0]
        assert abs(result.t_peak - math.pi / 2.0) < spacing
        assert abs(result.period - math.pi) < spacing

    def test_cosine_two_periods(self) -> None:
        """Test the period of a signal covering exactly two periods."""
        times = np.linspace(0.0, 4.0 * math.pi, 801)
        series = TimeSeries(times=times, values=np.cos(times))
        result = entanglement.find_peak_and_period(series)
        assert result.period == pytest.approx(2.0 * math.pi, abs=times[1] - times[0])

    def test_constant_series(self) -> None:
        """Test that a constant series has no peak."""
        series = TimeSeries(times=np.linspace(0, 10, 101), values=np.full(101, 0.3))
        with pytest.raises(NoPeakError):
            entanglement.find_peak_and_period(series)

    def test_monotone_series(self) -> None:
        """Test that a monotone series has no interior peak."""
        times = np.linspace(0, 1, 101)
        with pytest.raises(NoPeakError):
            entanglement.find_peak_and_period(TimeSeries(times=times, values=times))

    def test_less_than_two_periods(self) -> None:
        """Test that a single oscillation gives no period."""
        times = np.linspace(0.0, 1.2 * math.pi, 301)
        series = TimeSeries(times=times, values=np.sin(times) ** 2)
        with pytest.raises(NoPeakError):
            entanglement.find_peak_and_period(series)

    def test_non_uniform_rejected(self) -> None:
        """Test that uneven sampling is rejected."""
        times = np.array([0.0, 0.1, 0.3, 0.4, 0.9, 1.0])
        series = TimeSeries(times=times, values=np.sin(times))
        with pytest.raises(ContractViolationError):
            entanglement.find_peak_and_period(series)

    @pytest.mark.parametrize("samples", [2, 3, 4])
    def test_too_few_samples(self, samples: int) -> None:
        """Test that a grid of fewer than five samples has no timing."""
        times = np.linspace(0.0, math.pi, samples)
        with pytest.raises(NoPeakError, match="at least 5"):
            entanglement.find_peak_and_period(TimeSeries(times=times, values=np.sin(times) ** 2))


class TestRevivalSignal:
    """Tests for the rotating-frame overlap."""

    def test_revival_period(self, detuned_pair) -> None:
        """Test that the revival signal repeats after 2 pi / q."""
        times = np.linspace(0.0, 3.0 * 8.0 * math.pi, 1201)
        states = [
            analytic.amplitudes_to_state(analytic.evolve_detuned_special(t, 0.3, 0.2), 2)
            for t in times
        ]
        signal = entanglement.revival_signal(states, times, analytic.mean_v_energy(*detuned_pair))
        assert signal.values[0] == pytest.approx(1.0)
        result = entanglement.find_peak_and_period(signal)
        assert result.period == pytest.approx(8.0 * math.pi, abs=times[1] - times[0])
