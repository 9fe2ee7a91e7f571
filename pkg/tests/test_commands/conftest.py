"""Fixtures for running the CLI in-process."""

import csv
import io
from collections.abc import Callable
from typing import NamedTuple

import pytest

from jc_entanglement.main import main


class CliResult(NamedTuple):
    """Exit code plus the parsed CSV output of one invocation."""

    code: int
    rows: list[dict[str, str]]
    footer: dict[str, str]
    stdout: str
    stderr: str


def parse_output(text: str) -> tuple[list[dict[str, str]], dict[str, str]]:
    """Split CSV rows from '# key=value' footer lines."""
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    footer = dict(
        line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# ")
    )
    rows = list(csv.DictReader(io.StringIO("\n".join(body)))) if body else []
    return rows, footer


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    """Call main() with the given arguments and capture its output."""

    def _run(*argv: str) -> CliResult:
        code = main(list(argv))
        captured = capsys.readouterr()
        rows, footer = parse_output(captured.out)
        return CliResult(code, rows, footer, captured.out, captured.err)

    return _run
