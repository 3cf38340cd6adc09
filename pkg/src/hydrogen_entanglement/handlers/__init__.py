"""Command handlers, one per CLI subcommand."""

from hydrogen_entanglement.handlers.base import BaseCommandHandler
from hydrogen_entanglement.handlers.hydrogen import HydrogenHandler
from hydrogen_entanglement.handlers.lattice import LatticeHandler
from hydrogen_entanglement.handlers.schmidt import SchmidtHandler

HANDLERS: dict[str, type[BaseCommandHandler]] = {
    SchmidtHandler.COMMAND: SchmidtHandler,
    HydrogenHandler.COMMAND: HydrogenHandler,
    LatticeHandler.COMMAND: LatticeHandler,
}

__all__ = [
    "HANDLERS",
    "BaseCommandHandler",
    "HydrogenHandler",
    "LatticeHandler",
    "SchmidtHandler",
]
