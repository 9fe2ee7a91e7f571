"""Flags, run-config assembly and CSV output shared by the subcommands."""

import argparse
import csv
import logging
import sys
from collections.abc import Iterable, Iterator, Mapping
from contextlib import contextmanager
from pathlib import Path
from typing import Any, TextIO

from jc_entanglement.schemas.run import RunConfig

logger = logging.getLogger(__name__)

# Parsed arguments that steer the CLI itself rather than the run.
CLI_ONLY_ARGS = frozenset({"command", "handler", "config", "verbose", "debug"})


def shared_parser() -> argparse.ArgumentParser:
    """Flags every subcommand accepts."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("run control")
    group.add_argument("--config", metavar="FILE", help="key=value config file (flags override it)")
    group.add_argument("--output", metavar="PATH", help="Output file, '-' for stdout (default)")
    group.add_argument("--verbose", action="store_true", help="Log progress at INFO level")
    group.add_argument("--debug", action="store_true", help="Log internals at DEBUG level")
    return parser


def system_parser() -> argparse.ArgumentParser:
    """Physical parameters, truncation and time grid."""
    parser = argparse.ArgumentParser(add_help=False)

    physical = parser.add_argument_group("physical parameters (hbar = 1, units of E_ref)")
    for name, text in (
        ("e-atom", "atomic splitting E"),
        ("omega", "mode frequency omega"),
        ("kappa", "coupling kappa"),
    ):
        for subsystem in ("a", "b"):
            physical.add_argument(
                f"--{name}-{subsystem}", type=float, help=f"{text} of subsystem {subsystem.upper()}"
            )

    dimensionless = parser.add_argument_group("equal subsystems")
    dimensionless.add_argument("--epsilon", type=float, help="Detuning omega / E - 1")
    dimensionless.add_argument("--lambda", dest="lam", type=float, help="Coupling kappa / E")
    dimensionless.add_argument("--e-atom", type=float, help="Atomic splitting (default 1)")

    grid = parser.add_argument_group("truncation and time grid")
    grid.add_argument("--n-max", type=int, help="Photons kept per mode")
    grid.add_argument("--t-start", type=float, help="First sample time (default 0)")
    grid.add_argument("--t-end", type=float, help="Last sample time (default 4 pi)")
    grid.add_argument("--samples", type=int, help="Number of samples (default 801)")
    return parser


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge the optional config file with the flags that were actually given."""
    values = {key: value for key, value in vars(args).items() if key not in CLI_ONLY_ARGS}
    config = RunConfig.load(args.config, **values)
    logger.debug("Run config: %s", config.model_dump(exclude_none=True))
    return config


def format_value(value: Any) -> str:
    """Full double precision for floats, plain text otherwise."""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@contextmanager
def open_output(path: str) -> Iterator[TextIO]:
    """Yield stdout for '-', else the file opened for writing."""
    if path == "-":
        yield sys.stdout
        return
    with Path(path).open("w", newline="", encoding="utf-8") as stream:
        yield stream


def write_csv(
    stream: TextIO,
    header: Iterable[str],
    rows: Iterable[Iterable[Any]],
    footer: Mapping[str, Any] | None = None,
) -> None:
    """Header row, data rows, then optional '# key=value' footer lines."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    for key, value in (footer or {}).items():
        stream.write(f"# {key}={format_value(value)}\n")
