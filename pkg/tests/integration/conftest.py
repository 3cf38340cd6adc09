"""Shared fixtures for integration tests."""

import json
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

import pytest

from hydrogen_entanglement import cli


@dataclass
class CliResult:
    """Exit code and captured streams of one CLI invocation."""

    exit_code: int
    stdout: str
    stderr: str

    def error(self) -> dict[str, Any]:
        """The JSON error document, printed as the last stderr line."""
        lines = [line for line in self.stderr.splitlines() if line.startswith("{")]
        return json.loads(lines[-1])


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[[Sequence[str]], CliResult]:
    """Invoke the CLI in-process and capture stdout and stderr."""

    def _run(argv: Sequence[str]) -> CliResult:
        capsys.readouterr()
        code = cli.main(list(argv))
        captured = capsys.readouterr()
        return CliResult(exit_code=code, stdout=captured.out, stderr=captured.err)

    return _run
