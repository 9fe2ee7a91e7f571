"""spectrum: dressed energies, closed form next to the oracle."""

import argparse
import logging

import numpy as np

from jc_entanglement.commands.common import open_output, write_csv
from jc_entanglement.config import Settings
from jc_entanglement.schemas.dressed import Sign
from jc_entanglement.schemas.params import Subsystem
from jc_entanglement.schemas.run import RunConfig
from jc_entanglement.services import analytic, oracle
from jc_entanglement.services.base import CheckFailedError, TruncationError

logger = logging.getLogger(__name__)

HEADER = ("n", "sign", "subsystem", "energy_analytic", "energy_oracle", "abs_diff", "splitting")

V_SIGNS = (Sign.MINUS, Sign.MINUS, Sign.PLUS, Sign.PLUS)


def add_parser(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "spectrum", parents=parents, help="Dressed-level energies against the oracle"
    )
    parser.add_argument("--levels", type=int, help="Dressed levels n = 0..levels-1 (default n_max)")
    parser.add_argument(
        "--check", action="store_true", default=None, help="Exit 1 if any abs_diff breaches tolerance"
    )
    parser.set_defaults(handler=run)


def run(config: RunConfig, settings: Settings) -> int:
    """Write one row per dressed level plus the four energies spanning V."""
    params = config.system_params()
    n_max = config.truncation(settings.default_n_max)
    levels = config.levels or n_max
    if levels > n_max:
        raise TruncationError(f"--levels {levels} needs n_max >= {levels}, got {n_max}")

    a, b = params.subsystem(Subsystem.A), params.subsystem(Subsystem.B)
    eigenvalues = oracle.eigendecompose(oracle.build_hamiltonian(a, b, n_max)).eigenvalues

    def nearest(energy: float) -> float:
        return float(eigenvalues[np.argmin(np.abs(eigenvalues - energy))])

    rows = []
    for n in range(levels):
        for subsystem in Subsystem:
            local = params.subsystem(subsystem)
            splitting = analytic.q_split(n, local.epsilon, local.lam) * local.e_atom
            for sign in (Sign.MINUS, Sign.PLUS):
                energy = analytic.dressed_state(n, sign, subsystem, params, n_max).total_energy
                exact = nearest(energy)
                rows.append(
                    (n, sign.value, subsystem.value, energy, exact, abs(energy - exact), splitting)
                )

    for k, (energy, sign) in enumerate(zip(analytic.four_state_energies(a, b), V_SIGNS, strict=True)):
        exact = nearest(energy)
        partner = b if k % 2 == 0 else a
        splitting = analytic.q_split(0, partner.epsilon, partner.lam) * partner.e_atom
        rows.append((0, sign.value, f"V{k + 1}", energy, exact, abs(energy - exact), splitting))

    with open_output(config.output) as stream:
        write_csv(stream, HEADER, rows)
    logger.info("Wrote %d spectrum rows", len(rows))

    if config.check:
        breaches = [
            f"n={row[0]} {row[1]} {row[2]}"
            for row in rows
            if row[5] > settings.spectrum_tolerance * max(1.0, abs(row[4]))
        ]
        if breaches:
            raise CheckFailedError(
                f"Spectrum check failed for {len(breaches)} level(s): {', '.join(breaches)}",
                failures=breaches,
            )
    return 0
