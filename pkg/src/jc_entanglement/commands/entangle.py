"""entangle: concurrence, entropy and joint-ground probability along the trajectory."""

import argparse
import logging
from typing import Any

from jc_entanglement.commands.common import open_output, write_csv
from jc_entanglement.commands.evolve import analytic_trajectory, sample_times
from jc_entanglement.config import Settings
from jc_entanglement.schemas.params import Subsystem
from jc_entanglement.schemas.run import RunConfig
from jc_entanglement.services import analytic, entanglement
from jc_entanglement.services.base import NoPeakError

logger = logging.getLogger(__name__)

HEADER = ("t", "concurrence", "entropy_bits", "p_joint_ground")


def add_parser(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "entangle", parents=parents, help="Atomic entanglement metrics and revival timing"
    )
    parser.set_defaults(handler=run)


def run(config: RunConfig, settings: Settings) -> int:
    """Data rows, then a '#' footer with extracted and predicted timings."""
    params = config.system_params()
    a, b = params.subsystem(Subsystem.A), params.subsystem(Subsystem.B)
    n_max = config.truncation(settings.default_n_max)
    times = sample_times(config)
    states = analytic_trajectory(params, times, n_max)

    reports = [entanglement.entanglement_report(float(t), s) for t, s in zip(times, states, strict=True)]
    rows = [(r.t, r.concurrence_atoms, r.entropy_bits, r.p_joint_ground) for r in reports]

    footer: dict[str, Any] = {}
    try:
        peak = entanglement.find_peak_and_period(entanglement.concurrence_series(states, times))
        footer["t_peak"] = peak.t_peak
        footer["period_concurrence"] = peak.period
    except NoPeakError as e:
        logger.warning("No concurrence peak extracted: %s", e)
        footer["t_peak"] = "unavailable"
        footer["period_concurrence"] = "unavailable"
    try:
        revival = entanglement.find_peak_and_period(
            entanglement.revival_signal(states, times, analytic.mean_v_energy(a, b))
        )
        footer["period_state"] = revival.period
    except NoPeakError as e:
        logger.warning("No state revival extracted: %s", e)
        footer["period_state"] = "unavailable"

    if params.is_symmetric:
        prediction = analytic.timing_predictions(a.epsilon, a.lam, a.e_atom)
        footer["predicted_t_peak"] = prediction.t_peak
        footer["predicted_period_concurrence"] = prediction.period_concurrence
        footer["predicted_period_state"] = prediction.period_state

    with open_output(config.output) as stream:
        write_csv(stream, HEADER, rows, footer)
    logger.info("Wrote %d entanglement rows", len(rows))
    return 0
