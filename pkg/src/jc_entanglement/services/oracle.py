"""Brute-force truncated-Fock-space oracle.

Builds the full Hamiltonian as a dense matrix, diagonalizes it and evolves
states exactly. Nothing here uses the closed-form dressed states, so it can
adjudicate every analytic formula.
"""

import logging
from collections.abc import Iterable
from enum import StrEnum

import numpy as np
from scipy import linalg

from jc_entanglement.schemas.params import Subsystem, SubsystemParams
from jc_entanglement.schemas.states import MatrixOperator, Spectrum, StateVector
from jc_entanglement.services.base import ContractViolationError, TruncationError
from jc_entanglement.services.model_core import OperatorKind, build_operator

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-10


class HamiltonianForm(StrEnum):
    """Which parametrization the Hamiltonian is assembled from."""

    PHYSICAL = "physical"
    DIMENSIONLESS = "dimensionless"


def subsystem_hamiltonian(
    params: SubsystemParams,
    subsystem: Subsystem,
    n_max: int,
    form: HamiltonianForm = HamiltonianForm.PHYSICAL,
) -> MatrixOperator:
    """H_j = hbar w (N + 1/2) + (E/2) sigma_z + hbar kappa (a^dag sigma_- + a sigma_+).

    The dimensionless form writes the same operator as
    (1 + eps) E (N + 1/2) + (E/2) sigma_z + lam E (a^dag sigma_- + a sigma_+).
    """
    op = {kind: build_operator(kind, subsystem, n_max).entries for kind in OperatorKind}
    if HamiltonianForm(form) is HamiltonianForm.PHYSICAL:
        photon_energy, coupling = params.omega, params.kappa
    else:
        photon_energy = (1.0 + params.epsilon) * params.e_atom
        coupling = params.lam * params.e_atom

    entries = (
        photon_energy * (op[OperatorKind.NUMBER] + 0.5 * op[OperatorKind.IDENTITY])
        + 0.5 * params.e_atom * op[OperatorKind.SIGMA_Z]
        + coupling
        * (
            op[OperatorKind.CREATE] @ op[OperatorKind.SIGMA_MINUS]
            + op[OperatorKind.ANNIHILATE] @ op[OperatorKind.SIGMA_PLUS]
        )
    )
    return MatrixOperator(entries=entries, n_max=n_max)


def build_hamiltonian(
    a: SubsystemParams,
    b: SubsystemParams,
    n_max: int,
    form: HamiltonianForm = HamiltonianForm.PHYSICAL,
) -> MatrixOperator:
    """Full Hamiltonian H = H_A + H_B on the truncated composite space.

    Raises:
        TruncationError: If n_max < 1.
    """
    if n_max < 1:
        raise TruncationError(f"n_max must be at least 1, got {n_max}")
    hamiltonian = subsystem_hamiltonian(a, Subsystem.A, n_max, form) + subsystem_hamiltonian(
        b, Subsystem.B, n_max, form
    )
    logger.debug("Built %s Hamiltonian, dimension %d", form, hamiltonian.dimension)
    return hamiltonian


def eigendecompose(hamiltonian: MatrixOperator) -> Spectrum:
    """Dense Hermitian diagonalization, eigenvalues ascending.

    Raises:
        ContractViolationError: If the operator is not Hermitian within 1e-10.
    """
    defect = hamiltonian.hermiticity_defect()
    if defect > HERMITIAN_TOLERANCE:
        raise ContractViolationError(f"Operator is not Hermitian (defect {defect:.3e})")
    eigenvalues, eigenvectors = linalg.eigh(hamiltonian.entries)
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def spectrum_residual(hamiltonian: MatrixOperator, spectrum: Spectrum) -> float:
    """Largest entry of |H V - V diag(E)|."""
    vectors = spectrum.eigenvectors
    return float(np.max(np.abs(hamiltonian.entries @ vectors - vectors * spectrum.eigenvalues)))


def unitarity_defect(spectrum: Spectrum) -> float:
    """Largest entry of |V^dag V - I|."""
    vectors = spectrum.eigenvectors
    return float(np.max(np.abs(vectors.conj().T @ vectors - np.eye(vectors.shape[0]))))


def evolve_exact(
    state0: StateVector,
    hamiltonian: MatrixOperator,
    t: float,
    spectrum: Spectrum | None = None,
) -> StateVector:
    """Exact evolution sum_k <v_k|psi_0> exp(-i E_k t) v_k.

    Args:
        state0: Normalized initial state.
        hamiltonian: Hamiltonian on the same truncation.
        t: Time in units of hbar / E_ref.
        spectrum: Precomputed eigendecomposition of ``hamiltonian``, if available.
    """
    return evolve_exact_many(state0, hamiltonian, [t], spectrum)[0]


def evolve_exact_many(
    state0: StateVector,
    hamiltonian: MatrixOperator,
    times: Iterable[float],
    spectrum: Spectrum | None = None,
) -> list[StateVector]:
    """Exact evolution at several times from one diagonalization."""
    if state0.n_max != hamiltonian.n_max:
        raise ContractViolationError(
            f"State truncation {state0.n_max} does not match Hamiltonian truncation {hamiltonian.n_max}"
        )
    spectrum = spectrum or eigendecompose(hamiltonian)
    vectors = spectrum.eigenvectors
    weights = vectors.conj().T @ state0.amplitudes
    return [
        StateVector(
            amplitudes=vectors @ (np.exp(-1j * spectrum.eigenvalues * t) * weights),
            n_max=state0.n_max,
        )
        for t in times
    ]


def check_conserved(hamiltonian: MatrixOperator, op: MatrixOperator) -> float:
    """Max-entry norm of the commutator [H, O].

    Raises:
        ContractViolationError: If the operators live on different truncations.
    """
    if hamiltonian.entries.shape != op.entries.shape:
        raise ContractViolationError(
            f"Dimension mismatch: {hamiltonian.entries.shape} vs {op.entries.shape}"
        )
    commutator = hamiltonian.entries @ op.entries - op.entries @ hamiltonian.entries
    return float(np.max(np.abs(commutator)))


def sector_coupling(hamiltonian: MatrixOperator) -> float:
    """Largest matrix element between different (N_A, N_B) excitation sectors."""
    n_max = hamiltonian.n_max
    sector_a = np.diag(build_operator(OperatorKind.EXCITATION, Subsystem.A, n_max).entries).real
    sector_b = np.diag(build_operator(OperatorKind.EXCITATION, Subsystem.B, n_max).entries).real
    same = np.equal.outer(sector_a, sector_a) & np.equal.outer(sector_b, sector_b)
    off_sector = np.where(same, 0.0, np.abs(hamiltonian.entries))
    return float(np.max(off_sector))
