"""Closed-form dressed-state spectra and time evolution.

Energies are in units of E_ref and times in units of hbar / E_ref. The
splitting of dressed level n is ``q_split(n) = sqrt(eps^2/4 + (n+1) lam^2)``;
every function that depends on it accepts a ``splitting`` callable so the
verification suite can swap in alternative index conventions.
"""

import math
from collections.abc import Callable, Sequence
from enum import StrEnum
from typing import NamedTuple

import numpy as np

from jc_entanglement.schemas.dressed import DressedLevel, EvolutionAmplitudes, Sign
from jc_entanglement.schemas.params import AtomState, BasisLabel, Subsystem, SubsystemParams, SystemParams
from jc_entanglement.schemas.states import StateVector, composite_dimension
from jc_entanglement.services.base import DegenerateLevelError, TruncationError
from jc_entanglement.services.model_core import (
    SQRT_HALF,
    basis_index,
    ground_state,
    phi_embedding,
    product_state,
)

Splitting = Callable[[int, float, float], float]

G, E = AtomState.GROUND, AtomState.EXCITED


class StationaryPair(StrEnum):
    """Sums of stationary states that appear in the special-case evolution."""

    LOWER = "psi1+psi2"
    UPPER = "psi3+psi4"


class TimingPrediction(NamedTuple):
    """Closed-form entanglement timings for equal subsystems."""

    t_peak: float
    period_state: float
    period_concurrence: float


def q_value(index: int, eps: float, lam: float) -> float:
    """sqrt(eps^2/4 + index * lam^2), the radical as printed at a given index."""
    return math.sqrt(eps * eps / 4.0 + index * lam * lam)


def q_split(n: int, eps: float, lam: float) -> float:
    """Splitting of dressed level n (the radical evaluated at index n + 1)."""
    return q_value(n + 1, eps, lam)


def mixing_angle(
    n: int, eps: float, lam: float, splitting: Splitting = q_split
) -> tuple[float, float]:
    """Return (cos theta_n, sin theta_n).

    Raises:
        DegenerateLevelError: If the splitting vanishes (eps = lam = 0).
    """
    q = splitting(n, eps, lam)
    if q == 0.0:
        raise DegenerateLevelError(
            f"Dressed level n={n} is degenerate for eps={eps!r}, lambda={lam!r}"
        )
    cos_theta = math.sqrt(max(q + eps / 2.0, 0.0) / (2.0 * q))
    sin_theta = math.copysign(1.0, lam) * math.sqrt(max(q - eps / 2.0, 0.0) / (2.0 * q))
    return cos_theta, sin_theta


def dressed_energy(
    n: int, sign: Sign, params: SubsystemParams, splitting: Splitting = q_split
) -> float:
    """E_n^(+/-) = (1 + eps)(n + 1) E +/- q E."""
    q = splitting(n, params.epsilon, params.lam)
    return (1.0 + params.epsilon) * (n + 1) * params.e_atom + Sign(sign).factor * q * params.e_atom


def ground_energy(params: SubsystemParams) -> float:
    """Energy eps E / 2 of |0;->."""
    return params.epsilon * params.e_atom / 2.0


def _pair_label(subsystem: Subsystem, photons: int, atom: AtomState) -> BasisLabel:
    if subsystem is Subsystem.A:
        return BasisLabel(n_a=photons, s_a=atom, n_b=0, s_b=G)
    return BasisLabel(n_a=0, s_a=G, n_b=photons, s_b=atom)


def dressed_state(
    n: int,
    sign: Sign,
    subsystem: Subsystem,
    params: SystemParams,
    n_max: int,
    splitting: Splitting = q_split,
) -> DressedLevel:
    """Dressed level n of one subsystem, the other subsystem in its ground state.

    Raises:
        TruncationError: If |n+1;-> lies outside the truncation.
        DegenerateLevelError: If eps = lam = 0 for this subsystem.
    """
    if n + 1 > n_max:
        raise TruncationError(f"Dressed level n={n} needs n_max >= {n + 1}, got {n_max}")

    sign, subsystem = Sign(sign), Subsystem(subsystem)
    local = params.subsystem(subsystem)
    other = params.subsystem(Subsystem.B if subsystem is Subsystem.A else Subsystem.A)
    cos_theta, sin_theta = mixing_angle(n, local.epsilon, local.lam, splitting)

    if sign is Sign.MINUS:
        upper, lower = cos_theta, -sin_theta
    else:
        upper, lower = sin_theta, cos_theta
    state = product_state(
        [
            (_pair_label(subsystem, n, E), upper),
            (_pair_label(subsystem, n + 1, G), lower),
        ],
        n_max,
    )
    return DressedLevel(
        n=n,
        sign=sign,
        subsystem=subsystem,
        energy=dressed_energy(n, sign, local, splitting),
        other_ground_energy=ground_energy(other),
        cos_theta=cos_theta,
        sin_theta=sin_theta,
        state=state,
    )


def ground_level(
    subsystem: Subsystem, params: SystemParams, n_max: int = 1
) -> tuple[StateVector, float]:
    """Ground state |0;->_j (embedded as |G>) and its subsystem energy eps_j E_j / 2."""
    return ground_state(n_max), ground_energy(params.subsystem(Subsystem(subsystem)))


def four_state_energies(
    a: SubsystemParams, b: SubsystemParams, splitting: Splitting = q_split
) -> tuple[float, float, float, float]:
    """Energies E_1..E_4 of the stationary states spanning V."""
    return (
        ground_energy(a) + dressed_energy(0, Sign.MINUS, b, splitting),
        ground_energy(b) + dressed_energy(0, Sign.MINUS, a, splitting),
        ground_energy(a) + dressed_energy(0, Sign.PLUS, b, splitting),
        ground_energy(b) + dressed_energy(0, Sign.PLUS, a, splitting),
    )


def expansion_coefficients(
    theta_a: tuple[float, float], theta_b: tuple[float, float]
) -> tuple[float, float, float, float]:
    """Coefficients c_k of sqrt(2)|psi_alpha> in the stationary states.

    Args:
        theta_a: (cos, sin) of the n = 0 mixing angle of subsystem A.
        theta_b: Same for subsystem B.
    """
    cos_a, sin_a = theta_a
    cos_b, sin_b = theta_b
    return (-sin_b, -sin_a, cos_b, cos_a)


def stationary_basis(
    a: SubsystemParams, b: SubsystemParams, splitting: Splitting = q_split
) -> np.ndarray:
    """Real orthogonal 4x4 matrix; row k is |psi_k> in the Phi basis."""
    cos_a, sin_a = mixing_angle(0, a.epsilon, a.lam, splitting)
    cos_b, sin_b = mixing_angle(0, b.epsilon, b.lam, splitting)
    return np.array(
        [
            [-sin_b, 0.0, 0.0, cos_b],
            [0.0, -sin_a, cos_a, 0.0],
            [cos_b, 0.0, 0.0, sin_b],
            [0.0, cos_a, sin_a, 0.0],
        ]
    )


def evolve_in_v(
    phi_amplitudes: Sequence[complex],
    t: float,
    a: SubsystemParams,
    b: SubsystemParams,
    n_max: int,
    splitting: Splitting = q_split,
) -> StateVector:
    """Evolve any initial state of V by expanding it in the stationary states.

    Args:
        phi_amplitudes: Initial amplitudes on |Phi_1>..|Phi_4>, normalized.
        t: Time in units of hbar / E_ref.
        a: Parameters of subsystem A.
        b: Parameters of subsystem B.
        n_max: Photon truncation of the returned state (at least 1).
    """
    if n_max < 1:
        raise TruncationError(f"V needs n_max >= 1, got {n_max}")
    basis = stationary_basis(a, b, splitting)
    energies = np.array(four_state_energies(a, b, splitting))
    coefficients = basis @ np.asarray(phi_amplitudes, dtype=np.complex128)
    phi_t = basis.T @ (np.exp(-1j * energies * t) * coefficients)
    return StateVector(amplitudes=phi_embedding(n_max) @ phi_t, n_max=n_max)


def evolve_general(
    t: float,
    a: SubsystemParams,
    b: SubsystemParams,
    n_max: int,
    splitting: Splitting = q_split,
) -> StateVector:
    """|psi_alpha(t)> for arbitrary subsystem parameters."""
    return evolve_in_v((SQRT_HALF, SQRT_HALF, 0.0, 0.0), t, a, b, n_max, splitting)


def evolve_detuned_special(t: float, eps: float, lam: float, e_atom: float = 1.0) -> EvolutionAmplitudes:
    """Equal-subsystem evolution as F |psi_alpha> + G |psi_beta> times exp(-i E' t).

    Raises:
        DegenerateLevelError: If eps = lam = 0.
    """
    cos_theta, sin_theta = mixing_angle(0, eps, lam)
    q = q_split(0, eps, lam)
    phase = q * e_atom * t
    cos_2theta = cos_theta**2 - sin_theta**2
    sin_2theta = 2.0 * sin_theta * cos_theta
    return EvolutionAmplitudes(
        t=t,
        f_amp=complex(math.cos(phase), -cos_2theta * math.sin(phase)),
        g_amp=complex(0.0, -sin_2theta * math.sin(phase)),
        global_phase=complex(np.exp(-1j * e_atom * (1.0 + 1.5 * eps) * t)),
    )


def evolve_resonant(t: float, lam: float, e_atom: float = 1.0) -> EvolutionAmplitudes:
    """Resonant evolution in angular form: cos(|lam| E t) and -i sgn(lam) sin(|lam| E t)."""
    if lam == 0.0:
        raise DegenerateLevelError("Resonant evolution needs a non-zero coupling")
    phase = abs(lam) * e_atom * t
    return EvolutionAmplitudes(
        t=t,
        f_amp=complex(math.cos(phase), 0.0),
        g_amp=complex(0.0, -math.copysign(1.0, lam) * math.sin(phase)),
        global_phase=complex(np.exp(-1j * e_atom * t)),
    )


def amplitudes_to_state(amplitudes: EvolutionAmplitudes, n_max: int) -> StateVector:
    """Expand global_phase * (f |psi_alpha> + g |psi_beta>) over the composite basis."""
    phi = amplitudes.global_phase * np.array(
        [amplitudes.f_amp, amplitudes.f_amp, amplitudes.g_amp, amplitudes.g_amp]
    )
    return StateVector(amplitudes=phi_embedding(n_max) @ (SQRT_HALF * phi), n_max=n_max)


def phi_basis_expansion(
    which: StationaryPair, theta: tuple[float, float]
) -> tuple[float, float, float, float]:
    """Coefficients of |psi_1>+|psi_2> (f_k) or |psi_3>+|psi_4> (g_k) on the Phi states."""
    cos_theta, sin_theta = theta
    if StationaryPair(which) is StationaryPair.LOWER:
        return (-sin_theta, -sin_theta, cos_theta, cos_theta)
    return (cos_theta, cos_theta, sin_theta, sin_theta)


def subsystem_levels(params: SubsystemParams, n_max: int, splitting: Splitting = q_split) -> np.ndarray:
    """All 2(n_max + 1) energies of one truncated atom-mode pair, ascending.

    |n_max;+> has no partner inside the truncation and keeps its bare energy.
    """
    eps, e_atom = params.epsilon, params.e_atom
    levels = [ground_energy(params)]
    for n in range(n_max):
        levels.append(dressed_energy(n, Sign.MINUS, params, splitting))
        levels.append(dressed_energy(n, Sign.PLUS, params, splitting))
    levels.append((1.0 + eps) * e_atom * (n_max + 0.5) + e_atom / 2.0)
    return np.sort(np.array(levels))


def product_spectrum(
    a: SubsystemParams, b: SubsystemParams, n_max: int, splitting: Splitting = q_split
) -> np.ndarray:
    """Every sum of subsystem levels: the full product-state spectrum, ascending."""
    total = np.add.outer(subsystem_levels(a, n_max, splitting), subsystem_levels(b, n_max, splitting))
    spectrum = np.sort(total.ravel())
    if spectrum.size != composite_dimension(n_max):
        raise TruncationError("Product spectrum does not fill the truncated space")
    return spectrum


def mean_v_energy(a: SubsystemParams, b: SubsystemParams) -> float:
    """Mean of E_1..E_4; equals E_atom (1 + 3 eps / 2) for equal subsystems."""
    return float(np.mean(four_state_energies(a, b)))


def to_pc_frame(state: StateVector, t: float, mean_energy: float) -> StateVector:
    """Strip exp(-i mean_energy t) and relabel each excited atom as -i |+>.

    The relabelling is a local phase change, so every entanglement measure is
    unchanged; at resonance all Phi amplitudes become real.
    """
    phases = (-1j) ** excited_atom_mask(state.n_max)
    rephased = state.amplitudes * np.exp(1j * mean_energy * t) * phases
    return StateVector(amplitudes=rephased, n_max=state.n_max)


def timing_predictions(eps: float, lam: float, e_atom: float = 1.0) -> TimingPrediction:
    """Peak time pi/(2qE), state period 2 pi/(qE) and concurrence period pi/(qE).

    Raises:
        DegenerateLevelError: If eps = lam = 0.
    """
    q = q_split(0, eps, lam)
    if q == 0.0:
        raise DegenerateLevelError("Timing is undefined: level n=0 is degenerate for eps = lam = 0")
    rate = q * e_atom
    return TimingPrediction(
        t_peak=math.pi / (2.0 * rate),
        period_state=2.0 * math.pi / rate,
        period_concurrence=math.pi / rate,
    )


def excited_atom_mask(n_max: int) -> np.ndarray:
    """Number of excited atoms for every dense index."""
    mask = np.zeros(composite_dimension(n_max), dtype=np.int64)
    for s_a in (G, E):
        for s_b in (G, E):
            for n_a in range(n_max + 1):
                for n_b in range(n_max + 1):
                    label = BasisLabel(n_a=n_a, s_a=s_a, n_b=n_b, s_b=s_b)
                    mask[basis_index(label, n_max)] = s_a.index + s_b.index
    return mask
