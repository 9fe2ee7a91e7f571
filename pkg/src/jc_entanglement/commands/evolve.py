"""evolve: closed-form amplitudes of |psi_alpha(t)> on the four states spanning V."""

import argparse
import logging

import numpy as np

from jc_entanglement.commands.common import open_output, write_csv
from jc_entanglement.config import Settings
from jc_entanglement.schemas.params import Subsystem, SystemParams
from jc_entanglement.schemas.run import RunConfig
from jc_entanglement.schemas.states import StateVector
from jc_entanglement.services import analytic, oracle
from jc_entanglement.services.base import CheckFailedError
from jc_entanglement.services.model_core import (
    PHI_LABELS,
    basis_index,
    psi_alpha,
    psi_beta,
)

logger = logging.getLogger(__name__)

HEADER = (
    "t",
    *(f"{part}_phi{k}" for k in range(1, 5) for part in ("re", "im")),
    "norm",
    "f2",
    "g2",
)


def add_parser(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "evolve", parents=parents, help="Closed-form evolution of the shared-photon state"
    )
    parser.add_argument(
        "--check", action="store_true", default=None, help="Exit 1 if the oracle disagrees"
    )
    parser.set_defaults(handler=run)


def sample_times(config: RunConfig) -> np.ndarray:
    return np.linspace(config.t_start, config.t_end, config.samples)


def analytic_trajectory(params: SystemParams, times: np.ndarray, n_max: int) -> list[StateVector]:
    """Closed-form states: the F/G form for equal subsystems, the four-state expansion otherwise."""
    if params.is_symmetric:
        sub = params.subsystem(Subsystem.A)
        return [
            analytic.amplitudes_to_state(
                analytic.evolve_detuned_special(t, sub.epsilon, sub.lam, sub.e_atom), n_max
            )
            for t in times
        ]
    a, b = params.subsystem(Subsystem.A), params.subsystem(Subsystem.B)
    return [analytic.evolve_general(t, a, b, n_max) for t in times]


def run(config: RunConfig, settings: Settings) -> int:
    """One row per sample time."""
    params = config.system_params()
    n_max = config.truncation(settings.default_n_max)
    times = sample_times(config)
    states = analytic_trajectory(params, times, n_max)

    indices = [basis_index(label, n_max) for label in PHI_LABELS]
    alpha, beta = psi_alpha(n_max), psi_beta(n_max)
    rows = []
    for t, state in zip(times, states, strict=True):
        phi = state.amplitudes[indices]
        parts = [float(x) for amp in phi for x in (amp.real, amp.imag)]
        norm = float(np.linalg.norm(state.amplitudes))
        rows.append(
            (t, *parts, norm, abs(alpha.overlap(state)) ** 2, abs(beta.overlap(state)) ** 2)
        )

    with open_output(config.output) as stream:
        write_csv(stream, HEADER, rows)
    logger.info("Wrote %d evolution rows", len(rows))

    if config.check:
        a, b = params.subsystem(Subsystem.A), params.subsystem(Subsystem.B)
        exact = oracle.evolve_exact_many(
            psi_alpha(n_max), oracle.build_hamiltonian(a, b, n_max), times
        )
        deviation = max(
            float(np.max(np.abs(s.amplitudes - e.amplitudes)))
            for s, e in zip(states, exact, strict=True)
        )
        logger.info("Largest deviation from the oracle: %.3e", deviation)
        if deviation > settings.evolution_tolerance:
            raise CheckFailedError(
                f"Evolution deviates from the oracle by {deviation:.3e} "
                f"(tolerance {settings.evolution_tolerance:g})",
                failures=["evolution"],
            )
    return 0
