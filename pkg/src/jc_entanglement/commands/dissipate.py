"""dissipate: the shared-photon state under cavity loss."""

import argparse
import logging

from jc_entanglement.commands.common import open_output, write_csv
from jc_entanglement.config import Settings
from jc_entanglement.schemas.metrics import ATOMS
from jc_entanglement.schemas.params import Subsystem
from jc_entanglement.schemas.run import RunConfig
from jc_entanglement.schemas.states import DensityOperator
from jc_entanglement.services import entanglement, lindblad, oracle
from jc_entanglement.services.base import ConfigurationError
from jc_entanglement.services.model_core import psi_alpha

logger = logging.getLogger(__name__)

HEADER = ("t", "trace", "n_a", "n_b", "concurrence", "p_joint_ground")


def add_parser(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "dissipate", parents=parents, help="Master-equation run with cavity photon loss"
    )
    parser.add_argument("--gamma", type=float, help="Loss rate of both modes (default 0)")
    parser.add_argument("--gamma-a", type=float, help="Loss rate of mode A (default gamma)")
    parser.add_argument("--gamma-b", type=float, help="Loss rate of mode B (default gamma)")
    parser.add_argument("--dt", type=float, help="Largest RK4 step (default 1e-3)")
    parser.set_defaults(handler=run)


def run(config: RunConfig, settings: Settings) -> int:
    """One row per snapshot on [0, t_end]."""
    if config.t_start != 0.0:
        raise ConfigurationError("dissipate integrates from t = 0; --t-start must be 0")

    params = config.system_params()
    n_max = config.truncation(settings.default_n_max)
    hamiltonian = oracle.build_hamiltonian(
        params.subsystem(Subsystem.A), params.subsystem(Subsystem.B), n_max
    )
    trajectory = lindblad.integrate(
        DensityOperator.from_state(psi_alpha(n_max)), hamiltonian, config.dissipation()
    )
    photons = lindblad.photon_expectations(trajectory)

    rows = [
        (
            snapshot.t,
            snapshot.rho.trace,
            n_a,
            n_b,
            entanglement.concurrence(entanglement.partial_trace(snapshot.rho, ATOMS)),
            entanglement.joint_ground_probability(snapshot.rho),
        )
        for snapshot, (n_a, n_b) in zip(trajectory, photons, strict=True)
    ]

    with open_output(config.output) as stream:
        write_csv(stream, HEADER, rows)
    logger.info("Wrote %d dissipation rows", len(rows))
    return 0
