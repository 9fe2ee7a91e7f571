"""Command-line parser aggregation."""

import argparse

from jc_entanglement import __version__
from jc_entanglement.commands import dissipate, entangle, evolve, spectrum, verify
from jc_entanglement.commands.common import shared_parser, system_parser


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subcommand per module."""
    parser = argparse.ArgumentParser(
        prog="jc-entangle",
        description="Two atoms in two cavities: dressed states, entanglement and cavity loss.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    parents = [shared_parser(), system_parser()]
    for command in (spectrum, evolve, entangle, dissipate, verify):
        command.add_parser(subparsers, parents)
    return parser
