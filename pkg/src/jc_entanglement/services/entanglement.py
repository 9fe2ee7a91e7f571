"""Entanglement metrics: reduced states, concurrence, entropy, timing extraction."""

import logging
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from scipy.signal import find_peaks

from jc_entanglement.config import get_settings
from jc_entanglement.schemas.metrics import (
    ATOMS,
    PAIR_A,
    Bipartition,
    EntanglementReport,
    Factor,
    TimeSeries,
)
from jc_entanglement.schemas.states import DensityOperator, StateVector, factor_dims
from jc_entanglement.services.base import ContractViolationError, NoPeakError, NotPureError

logger = logging.getLogger(__name__)

# sigma_y (x) sigma_y; real and insensitive to the order of the atomic levels.
SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

PURITY_TOLERANCE = 1e-9


class PeakAndPeriod(NamedTuple):
    """Timing features of a sampled oscillation."""

    t_peak: float
    period: float


def _factor_dims(target: StateVector | DensityOperator) -> tuple[int, ...]:
    dims = factor_dims(target.n_max) if isinstance(target, StateVector) else target.dims
    if len(dims) != len(Factor):
        raise ContractViolationError(f"Expected {len(Factor)} tensor factors, got dims {dims}")
    return tuple(dims)


def partial_trace(target: StateVector | DensityOperator, keep: Bipartition) -> DensityOperator:
    """Reduced density operator on the kept factors (in basis order)."""
    dims = _factor_dims(target)
    kept = [int(f) for f in keep.ordered]
    traced = [i for i in range(len(dims)) if i not in kept]
    kept_dim = int(np.prod([dims[i] for i in kept]))

    if isinstance(target, StateVector):
        tensor = target.amplitudes.reshape(dims)
        matrix = np.transpose(tensor, kept + traced).reshape(kept_dim, -1)
        reduced = matrix @ matrix.conj().T
    else:
        rows = "abcd"
        cols = "efgh"
        col_letters = [rows[i] if i in traced else cols[i] for i in range(len(dims))]
        spec = (
            rows
            + "".join(col_letters)
            + "->"
            + "".join(rows[i] for i in kept)
            + "".join(cols[i] for i in kept)
        )
        tensor = target.entries.reshape(dims + dims)
        reduced = np.einsum(spec, tensor).reshape(kept_dim, kept_dim)

    reduced = 0.5 * (reduced + reduced.conj().T)
    return DensityOperator(entries=reduced, dims=tuple(dims[i] for i in kept))


def _clamped_eigen(rho: DensityOperator, cutoff: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs with rounding-level eigenvalues set to zero.

    Raises:
        ContractViolationError: If an eigenvalue is below -positivity_tolerance.
    """
    settings = get_settings()
    hermitian = 0.5 * (rho.entries + rho.entries.conj().T)
    eigenvalues, eigenvectors = np.linalg.eigh(hermitian)
    if eigenvalues[0] < -settings.positivity_tolerance:
        raise ContractViolationError(
            f"Density operator is not positive semidefinite (min eigenvalue {eigenvalues[0]:.3e})"
        )
    return np.where(eigenvalues < cutoff, 0.0, eigenvalues), eigenvectors


def concurrence(rho: DensityOperator) -> float:
    """Wootters concurrence of a two-qubit density operator.

    The decreasing lambda_i are taken as singular values of
    sqrt(rho) Y sqrt(rho)*, which equal the square roots of the eigenvalues of
    rho Y rho* Y without a square root of rounding-level numbers.

    Raises:
        ContractViolationError: If rho is not 4x4.
    """
    if rho.entries.shape != (4, 4):
        raise ContractViolationError(f"Concurrence needs a 4x4 operator, got {rho.entries.shape}")

    weights, vectors = _clamped_eigen(rho, get_settings().rank_cutoff)
    sqrt_rho = (vectors * np.sqrt(weights)) @ vectors.conj().T
    singular = np.linalg.svd(sqrt_rho @ SPIN_FLIP @ sqrt_rho.conj(), compute_uv=False)
    value = singular[0] - singular[1] - singular[2] - singular[3]
    return float(min(1.0, max(0.0, value)))


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Entropy in bits, with 0 log 0 = 0."""
    weights, _ = _clamped_eigen(rho, 0.0)
    weights = weights[weights > 0]
    return float(max(0.0, -np.sum(weights * np.log2(weights))))


def entanglement_entropy(target: StateVector | DensityOperator, cut: Bipartition) -> float:
    """Entropy of the reduced state across a bipartition of a pure state.

    Raises:
        NotPureError: If a density operator with tr(rho^2) < 1 - 1e-9 is given.
    """
    if isinstance(target, DensityOperator) and target.purity < 1.0 - PURITY_TOLERANCE:
        raise NotPureError(f"Entanglement entropy needs a pure state (purity {target.purity:.6f})")
    return von_neumann_entropy(partial_trace(target, cut))


def _atom_populations(target: StateVector | DensityOperator) -> np.ndarray:
    """Probabilities of (s_A, s_B) in the order (--, -+, +-, ++)."""
    atoms = partial_trace(target, ATOMS)
    return np.clip(np.diag(atoms.entries).real, 0.0, 1.0)


def joint_ground_probability(target: StateVector | DensityOperator) -> float:
    """Probability that both atoms are in their ground states."""
    return float(_atom_populations(target)[0])


def single_excitation_probability(target: StateVector | DensityOperator) -> float:
    """Probability that exactly one atom is excited."""
    populations = _atom_populations(target)
    return float(populations[1] + populations[2])


def entanglement_report(t: float, target: StateVector | DensityOperator) -> EntanglementReport:
    """Concurrence, A-pair | B-pair entropy (pure states) and joint-ground probability."""
    entropy = entanglement_entropy(target, PAIR_A) if isinstance(target, StateVector) else None
    return EntanglementReport(
        t=t,
        concurrence_atoms=concurrence(partial_trace(target, ATOMS)),
        entropy_bits=entropy,
        p_joint_ground=joint_ground_probability(target),
    )


def concurrence_series(
    targets: Sequence[StateVector | DensityOperator], times: Sequence[float]
) -> TimeSeries:
    """Atomic concurrence sampled along a trajectory."""
    values = [concurrence(partial_trace(target, ATOMS)) for target in targets]
    return TimeSeries(times=np.asarray(times), values=np.asarray(values))


def revival_signal(
    states: Sequence[StateVector], times: Sequence[float], mean_energy: float
) -> TimeSeries:
    """Re(exp(i E_mean t) <psi(0)|psi(t)>): the overlap seen in the frame rotating at E_mean."""
    times = np.asarray(times, dtype=np.float64)
    initial = states[0]
    values = [
        (np.exp(1j * mean_energy * (t - times[0])) * initial.overlap(state)).real
        for t, state in zip(times, states, strict=True)
    ]
    return TimeSeries(times=times, values=np.asarray(values))


def _parabolic_offset(left: float, centre: float, right: float) -> float:
    """Vertex offset, in samples, of the parabola through three points."""
    curvature = left - 2.0 * centre + right
    if curvature == 0.0:
        return 0.0
    return 0.5 * (left - right) / curvature


def _difference_function(values: np.ndarray, max_lag: int) -> np.ndarray:
    """d(k) = mean_i (x[i+k] - x[i])^2 for k = 0..max_lag."""
    lags = np.zeros(max_lag + 1)
    for lag in range(1, max_lag + 1):
        diff = values[lag:] - values[:-lag]
        lags[lag] = np.mean(diff * diff)
    return lags


def find_peak_and_period(series: TimeSeries) -> PeakAndPeriod:
    """First prominent maximum and the repetition period of a sampled signal.

    The peak is refined with a parabola through the three samples around the
    discrete maximum. The period is the first deep minimum of the
    autocorrelation difference function, refined the same way.

    Raises:
        ContractViolationError: If the sampling is not uniform.
        NoPeakError: If the series has fewer than 5 samples, is constant, has no
            prominent peak, or covers fewer than two periods.
    """
    if series.times.size < 5:
        raise NoPeakError(f"Series has {series.times.size} samples; at least 5 are needed")
    if not series.is_uniform():
        raise ContractViolationError("Peak extraction needs uniform samples")

    values = series.values
    dt = series.spacing
    span = float(np.max(values) - np.min(values))
    if span <= 1e-12 * max(1.0, float(np.max(np.abs(values)))):
        raise NoPeakError("Series is constant")

    peaks, _ = find_peaks(values, prominence=0.5 * span)
    if peaks.size == 0:
        raise NoPeakError("Series has no prominent interior peak")
    k = int(peaks[0])
    t_peak = series.times[k] + dt * _parabolic_offset(values[k - 1], values[k], values[k + 1])

    max_lag = (3 * values.size) // 4
    differences = _difference_function(values - np.mean(values), max_lag)
    ceiling = float(np.max(differences))
    risen = np.flatnonzero(differences >= 0.5 * ceiling)
    minima, _ = find_peaks(-differences)
    candidates = [
        int(m) for m in minima if risen.size and m > risen[0] and differences[m] < 0.25 * ceiling
    ]
    if not candidates:
        raise NoPeakError("Series covers fewer than two periods")
    lag = candidates[0]
    period = dt * (
        lag + _parabolic_offset(differences[lag - 1], differences[lag], differences[lag + 1])
    )

    logger.debug("Extracted t_peak=%.6g, period=%.6g from %d samples", t_peak, period, values.size)
    return PeakAndPeriod(t_peak=float(t_peak), period=float(period))
