"""Cavity-loss master equation on the joint two-subsystem density operator.

d rho / dt = -i [H, rho] + sum_j gamma_j (a_j rho a_j^dag - {a_j^dag a_j, rho} / 2),
integrated with fixed-step fourth-order Runge-Kutta.
"""

import logging
import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from scipy import linalg

from jc_entanglement.config import get_settings
from jc_entanglement.schemas.params import Subsystem
from jc_entanglement.schemas.run import DissipationConfig
from jc_entanglement.schemas.states import DensityOperator, MatrixOperator, factor_dims
from jc_entanglement.services.base import ContractViolationError, IntegrationError
from jc_entanglement.services.model_core import OperatorKind, build_operator, expectation

logger = logging.getLogger(__name__)


class Snapshot(NamedTuple):
    """Density operator at one sample time."""

    t: float
    rho: DensityOperator


def loss_operators(n_max: int) -> list[MatrixOperator]:
    """Photon annihilation operators [a_A, a_B] on the composite space."""
    return [build_operator(OperatorKind.ANNIHILATE, subsystem, n_max) for subsystem in Subsystem]


def _rates(gamma: float | Sequence[float], count: int) -> list[float]:
    rates = [float(gamma)] * count if np.isscalar(gamma) else [float(g) for g in gamma]
    if len(rates) != count:
        raise ContractViolationError(f"Got {len(rates)} loss rates for {count} loss operators")
    if any(rate < 0 for rate in rates):
        raise ContractViolationError(f"Loss rates must be non-negative, got {rates}")
    return rates


class _Liouvillian:
    """Right-hand side on plain arrays, with a^dag a precomputed per channel."""

    def __init__(self, hamiltonian: np.ndarray, loss_ops: Sequence[np.ndarray], rates: Sequence[float]):
        self.hamiltonian = hamiltonian
        self.channels = [
            (rate, op, op.conj().T, op.conj().T @ op)
            for rate, op in zip(rates, loss_ops, strict=True)
            if rate > 0
        ]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        drho = -1j * (self.hamiltonian @ rho - rho @ self.hamiltonian)
        for rate, op, op_dag, number in self.channels:
            drho += rate * (op @ rho @ op_dag - 0.5 * (number @ rho + rho @ number))
        return drho


def lindblad_rhs(
    rho: DensityOperator,
    hamiltonian: MatrixOperator,
    loss_ops: Sequence[MatrixOperator],
    gamma: float | Sequence[float],
) -> MatrixOperator:
    """Time derivative of rho; Hermitian and traceless.

    Args:
        rho: Current density operator.
        hamiltonian: System Hamiltonian on the same truncation.
        loss_ops: Jump operators a_j.
        gamma: One rate for every channel, or one rate per channel.

    Raises:
        ContractViolationError: On a dimension mismatch or a negative rate.
    """
    if rho.entries.shape != hamiltonian.entries.shape or any(
        op.entries.shape != hamiltonian.entries.shape for op in loss_ops
    ):
        raise ContractViolationError("rho, H and the loss operators must share one basis")
    rates = _rates(gamma, len(loss_ops))
    rhs = _Liouvillian(hamiltonian.entries, [op.entries for op in loss_ops], rates)
    return MatrixOperator(entries=rhs(np.asarray(rho.entries)), n_max=hamiltonian.n_max)


def rk4_step(rhs: _Liouvillian, rho: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step."""
    k1 = rhs(rho)
    k2 = rhs(rho + 0.5 * dt * k1)
    k3 = rhs(rho + 0.5 * dt * k2)
    k4 = rhs(rho + dt * k3)
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _snapshot(t: float, rho: np.ndarray, dims: tuple[int, ...]) -> Snapshot:
    """Validate drift and positivity, then freeze one sample.

    Raises:
        IntegrationError: If the trace has drifted beyond the configured limit, or
            an eigenvalue has fallen below -positivity_drift_limit.
    """
    settings = get_settings()
    drift = abs(complex(np.trace(rho)) - 1.0)
    if drift > settings.trace_drift_limit:
        raise IntegrationError(
            f"Trace drifted by {drift:.3e} at t={t:.6g}; reduce dt "
            f"(limit {settings.trace_drift_limit:g})"
        )
    if drift > settings.trace_tolerance:
        logger.warning("Trace drift %.3e at t=%.6g exceeds %g", drift, t, settings.trace_tolerance)
    hermitian = 0.5 * (rho + rho.conj().T)
    lowest = float(linalg.eigvalsh(hermitian)[0])
    if lowest < -settings.positivity_drift_limit:
        raise IntegrationError(
            f"Density operator lost positivity at t={t:.6g}: eigenvalue {lowest:.3e}; reduce dt "
            f"(limit {settings.positivity_drift_limit:g})"
        )
    return Snapshot(t=t, rho=DensityOperator(entries=hermitian, dims=dims))


def integrate(
    rho0: DensityOperator,
    hamiltonian: MatrixOperator,
    config: DissipationConfig,
    *,
    advise_step: bool = True,
) -> list[Snapshot]:
    """Integrate the master equation and sample it at config.samples even times on [0, t_end].

    Between samples the integrator takes ceil(interval / dt) equal steps, so
    every step is at most dt. With advise_step=False a step above the
    rk4_step_advisory threshold is logged at DEBUG instead of WARNING.

    Raises:
        ContractViolationError: If rho0 and H do not share a basis.
        IntegrationError: If the trace drifts by more than trace_drift_limit or rho
            loses positivity.
    """
    n_max = hamiltonian.n_max
    dims = factor_dims(n_max)
    if tuple(rho0.dims) != dims:
        raise ContractViolationError(f"rho0 dims {rho0.dims} do not match H truncation {dims}")
    if config.t_end == 0.0:
        return [Snapshot(t=0.0, rho=rho0)]

    settings = get_settings()
    spectral_radius = float(np.max(np.abs(linalg.eigvalsh(hamiltonian.entries))))
    if config.dt * spectral_radius > settings.rk4_step_advisory:
        logger.log(
            logging.WARNING if advise_step else logging.DEBUG,
            "dt * max|E_k| = %.3g exceeds %g; RK4 accuracy may suffer",
            config.dt * spectral_radius,
            settings.rk4_step_advisory,
        )

    rhs = _Liouvillian(
        hamiltonian.entries, [op.entries for op in loss_operators(n_max)], config.rates
    )
    times = np.linspace(0.0, config.t_end, config.samples)
    interval = times[1] - times[0]
    substeps = max(1, math.ceil(interval / config.dt - 1e-9))
    step = interval / substeps
    logger.debug(
        "Integrating %d samples with %d RK4 steps of %.3g each", config.samples, substeps, step
    )

    rho = np.array(rho0.entries, dtype=np.complex128)
    trajectory = [Snapshot(t=0.0, rho=rho0)]
    for t in times[1:]:
        for _ in range(substeps):
            rho = rk4_step(rhs, rho, step)
        trajectory.append(_snapshot(float(t), rho, dims))
    return trajectory


def photon_expectations(trajectory: Sequence[Snapshot]) -> list[tuple[float, float]]:
    """(<N_A>, <N_B>) at every snapshot."""
    if not trajectory:
        return []
    n_max = trajectory[0].rho.dims[0] - 1
    number_a = build_operator(OperatorKind.NUMBER, Subsystem.A, n_max)
    number_b = build_operator(OperatorKind.NUMBER, Subsystem.B, n_max)
    return [(expectation(number_a, s.rho), expectation(number_b, s.rho)) for s in trajectory]
