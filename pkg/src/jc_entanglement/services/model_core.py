"""Parameter handling, composite-basis bookkeeping and elementary operators.

The composite space is ordered (mode A, atom A, mode B, atom B), each atom
factor ordered (ground, excited). Operators are dense and cached per
(kind, subsystem, n_max); cached values are frozen and safe to share.
"""

import logging
from collections.abc import Iterable
from enum import StrEnum
from functools import lru_cache, reduce

import numpy as np

from jc_entanglement.schemas.params import (
    AtomState,
    BasisLabel,
    DimensionlessParams,
    Subsystem,
    SystemParams,
)
from jc_entanglement.schemas.states import (
    DensityOperator,
    MatrixOperator,
    StateVector,
    composite_dimension,
)
from jc_entanglement.services.base import BasisIndexError, InvalidParameterError, TruncationError

logger = logging.getLogger(__name__)

SQRT_HALF = 1.0 / np.sqrt(2.0)

G, E = AtomState.GROUND, AtomState.EXCITED

# The four states spanning V: one excitation shared between the two pairs.
PHI_LABELS: tuple[BasisLabel, ...] = (
    BasisLabel(n_a=0, s_a=G, n_b=1, s_b=G),
    BasisLabel(n_a=1, s_a=G, n_b=0, s_b=G),
    BasisLabel(n_a=0, s_a=E, n_b=0, s_b=G),
    BasisLabel(n_a=0, s_a=G, n_b=0, s_b=E),
)


class OperatorKind(StrEnum):
    """Elementary single-subsystem operators."""

    ANNIHILATE = "a"
    CREATE = "a+"
    NUMBER = "N"
    SIGMA_PLUS = "sigma+"
    SIGMA_MINUS = "sigma-"
    SIGMA_Z = "sigmaz"
    EXCITATION = "excitation"
    IDENTITY = "I"


def to_dimensionless(params: SystemParams) -> DimensionlessParams:
    """Convert physical parameters to detuning and coupling ratio.

    Raises:
        InvalidParameterError: If an atomic splitting is not positive.
    """
    for name in ("e_atom_a", "e_atom_b"):
        if not getattr(params, name) > 0:
            raise InvalidParameterError(f"{name} must be positive, got {getattr(params, name)!r}")

    return DimensionlessParams(
        epsilon_a=params.omega_a / params.e_atom_a - 1.0,
        epsilon_b=params.omega_b / params.e_atom_b - 1.0,
        lambda_a=params.kappa_a / params.e_atom_a,
        lambda_b=params.kappa_b / params.e_atom_b,
    )


def basis_index(label: BasisLabel, n_max: int) -> int:
    """Dense index of a product label, lexicographic in (n_A, s_A, n_B, s_B).

    Raises:
        BasisIndexError: If a photon count exceeds n_max.
    """
    if label.n_a > n_max or label.n_b > n_max:
        raise BasisIndexError(f"Photon count in {label} exceeds n_max={n_max}")
    modes = n_max + 1
    return ((label.n_a * 2 + label.s_a.index) * modes + label.n_b) * 2 + label.s_b.index


def basis_label(index: int, n_max: int) -> BasisLabel:
    """Inverse of basis_index.

    Raises:
        BasisIndexError: If the index is outside the truncated space.
    """
    dim = composite_dimension(n_max)
    if not 0 <= index < dim:
        raise BasisIndexError(f"Index {index} outside 0..{dim - 1} for n_max={n_max}")
    modes = n_max + 1
    index, s_b = divmod(index, 2)
    index, n_b = divmod(index, modes)
    n_a, s_a = divmod(index, 2)
    states = (G, E)
    return BasisLabel(n_a=n_a, s_a=states[s_a], n_b=n_b, s_b=states[s_b])


def _mode_matrix(kind: OperatorKind, n_max: int) -> np.ndarray:
    """Single-mode ladder operator truncated at n_max photons."""
    lowering = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=np.float64)), k=1)
    if kind is OperatorKind.ANNIHILATE:
        return lowering
    if kind is OperatorKind.CREATE:
        return lowering.T.copy()
    return np.diag(np.arange(n_max + 1, dtype=np.float64))


def _atom_matrix(kind: OperatorKind) -> np.ndarray:
    """Two-level operator in the (ground, excited) ordering."""
    if kind is OperatorKind.SIGMA_PLUS:
        return np.array([[0.0, 0.0], [1.0, 0.0]])
    if kind is OperatorKind.SIGMA_MINUS:
        return np.array([[0.0, 1.0], [0.0, 0.0]])
    return np.diag([-1.0, 1.0])


def _embed(mode_op: np.ndarray, atom_op: np.ndarray, subsystem: Subsystem, n_max: int) -> np.ndarray:
    """Place a (mode, atom) pair operator on one subsystem, identity elsewhere."""
    idle = [np.eye(n_max + 1), np.eye(2)]
    factors = [mode_op, atom_op, *idle] if subsystem is Subsystem.A else [*idle, mode_op, atom_op]
    return reduce(np.kron, factors)


@lru_cache(maxsize=256)
def build_operator(kind: OperatorKind, subsystem: Subsystem, n_max: int) -> MatrixOperator:
    """Build an elementary operator embedded in the composite space.

    ``EXCITATION`` is N_j + sigma_zj / 2 + 1/2, the per-subsystem excitation
    number conserved by the rotating-wave coupling.

    Raises:
        TruncationError: If n_max < 1.
    """
    if n_max < 1:
        raise TruncationError(f"n_max must be at least 1, got {n_max}")

    kind = OperatorKind(kind)
    subsystem = Subsystem(subsystem)
    mode_id, atom_id = np.eye(n_max + 1), np.eye(2)

    if kind in (OperatorKind.ANNIHILATE, OperatorKind.CREATE, OperatorKind.NUMBER):
        local = _embed(_mode_matrix(kind, n_max), atom_id, subsystem, n_max)
    elif kind in (OperatorKind.SIGMA_PLUS, OperatorKind.SIGMA_MINUS, OperatorKind.SIGMA_Z):
        local = _embed(mode_id, _atom_matrix(kind), subsystem, n_max)
    elif kind is OperatorKind.EXCITATION:
        number = _embed(_mode_matrix(OperatorKind.NUMBER, n_max), atom_id, subsystem, n_max)
        sigma_z = _embed(mode_id, _atom_matrix(OperatorKind.SIGMA_Z), subsystem, n_max)
        local = number + 0.5 * sigma_z + 0.5 * np.eye(composite_dimension(n_max))
    else:
        local = np.eye(composite_dimension(n_max))

    logger.debug("Built %s on %s (n_max=%d)", kind.value, subsystem.value, n_max)
    return MatrixOperator(entries=local, n_max=n_max)


def product_state(
    terms: Iterable[tuple[BasisLabel, complex]],
    n_max: int,
) -> StateVector:
    """Normalized superposition of product-basis labels.

    Args:
        terms: (label, amplitude) pairs; repeated labels add up.
        n_max: Photon truncation.
    """
    amplitudes = np.zeros(composite_dimension(n_max), dtype=np.complex128)
    for label, amplitude in terms:
        amplitudes[basis_index(label, n_max)] += amplitude
    return StateVector.normalized(amplitudes, n_max)


def phi_state(k: int, n_max: int) -> StateVector:
    """|Phi_k>, k = 1..4."""
    if not 1 <= k <= 4:
        raise BasisIndexError(f"Phi states are numbered 1..4, got {k}")
    return product_state([(PHI_LABELS[k - 1], 1.0)], n_max)


def phi_embedding(n_max: int) -> np.ndarray:
    """Columns are |Phi_1>..|Phi_4> in the composite basis."""
    columns = np.zeros((composite_dimension(n_max), 4), dtype=np.complex128)
    for k, label in enumerate(PHI_LABELS):
        columns[basis_index(label, n_max), k] = 1.0
    return columns


def psi_alpha(n_max: int) -> StateVector:
    """Initial state (|Phi_1> + |Phi_2>) / sqrt(2): one photon shared, both atoms ground."""
    return product_state([(PHI_LABELS[0], SQRT_HALF), (PHI_LABELS[1], SQRT_HALF)], n_max)


def psi_beta(n_max: int) -> StateVector:
    """(|Phi_3> + |Phi_4>) / sqrt(2): vacuum field, one atom excited."""
    return product_state([(PHI_LABELS[2], SQRT_HALF), (PHI_LABELS[3], SQRT_HALF)], n_max)


def ground_state(n_max: int) -> StateVector:
    """|G> = |0;->_A |0;->_B."""
    return product_state([(BasisLabel(n_a=0, s_a=G, n_b=0, s_b=G), 1.0)], n_max)


def expectation(op: MatrixOperator, target: StateVector | DensityOperator) -> float:
    """Real expectation value of a Hermitian operator."""
    if isinstance(target, StateVector):
        return float(np.vdot(target.amplitudes, op.entries @ target.amplitudes).real)
    return float(np.trace(op.entries @ target.entries).real)
