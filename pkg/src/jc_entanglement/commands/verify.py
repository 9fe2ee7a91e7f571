"""verify: run the analytic-versus-oracle acceptance suite."""

import argparse

from jc_entanglement.commands.common import open_output
from jc_entanglement.config import Settings
from jc_entanglement.schemas.run import RunConfig
from jc_entanglement.services.analytic import q_split
from jc_entanglement.services.base import CheckFailedError
from jc_entanglement.services.verification import mutated_q_index, run_verification


def add_parser(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "verify", parents=parents, help="Check every closed form against the oracle"
    )
    parser.add_argument(
        "--mutate-q-index",
        action="store_true",
        default=None,
        help="Evaluate the splitting at index n instead of n + 1 (expected to fail)",
    )
    parser.set_defaults(handler=run)


def run(config: RunConfig, settings: Settings) -> int:
    """Print one line per check; exit 1 naming the failures."""
    splitting = mutated_q_index if config.mutate_q_index else q_split
    report = run_verification(settings, splitting)

    with open_output(config.output) as stream:
        for check in report.checks:
            stream.write(check.summary() + "\n")
        stream.write(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed\n")

    if not report.passed:
        raise CheckFailedError(
            f"Verification failed: {', '.join(report.failures)}", failures=report.failures
        )
    return 0
