"""Base command handler.

Defines the contract every subcommand handler implements and the shared
plumbing: output destinations, summary writing and mapping library errors to
exit codes.
"""

from __future__ import annotations

import json
import sys
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, ClassVar, Generic, TextIO, TypeVar

import structlog

from hydrogen_entanglement.config import Settings
from hydrogen_entanglement.export import dump_summary
from hydrogen_entanglement.schemas.run import RunConfig
from hydrogen_entanglement.utils.errors import EntanglementError

ConfigT = TypeVar("ConfigT", bound=RunConfig)

EXIT_OK = 0


@contextmanager
def open_output(target: str, *, dash: TextIO) -> Iterator[TextIO]:
    """Yield a text stream for target; '-' maps to the given standard stream."""
    if target == "-":
        yield dash
        dash.flush()
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as stream:
        yield stream


class BaseCommandHandler(ABC, Generic[ConfigT]):
    """Runs one subcommand and turns its outcome into an exit code."""

    # Override in subclass with the subcommand name
    COMMAND: ClassVar[str] = ""

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.logger = structlog.get_logger().bind(
            handler=self.__class__.__name__, command=self.COMMAND
        )

    def run(self, config: ConfigT) -> int:
        """Execute the command; library errors become their exit codes.

        Errors are reported as a one-line JSON document on stderr.
        """
        try:
            self.execute(config)
        except EntanglementError as e:
            self.logger.error(
                "Command failed",
                error_type=type(e).__name__,
                category=e.category,
                invariant=e.details.get("invariant"),
            )
            print(json.dumps(e.to_dict(), sort_keys=True, default=str), file=sys.stderr)
            return e.exit_code
        return EXIT_OK

    @abstractmethod
    def execute(self, config: ConfigT) -> None:
        """Run the computation and write its outputs."""
        ...

    def write_table(self, config: ConfigT, writer: Callable[[TextIO], None]) -> None:
        with open_output(config.out, dash=sys.stdout) as stream:
            writer(stream)
        self.logger.info("Wrote table", out=config.out)

    def write_summary(self, config: ConfigT, summary: dict[str, Any]) -> None:
        target = config.summary_target()
        with open_output(target, dash=sys.stderr) as stream:
            stream.write(dump_summary(summary))
        self.logger.info("Wrote summary", summary=target)
