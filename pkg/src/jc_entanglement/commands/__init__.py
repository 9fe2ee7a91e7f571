"""CLI subcommands."""

from jc_entanglement.commands.router import build_parser

__all__ = ["build_parser"]
