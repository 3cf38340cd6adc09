"""Density-matrix analysis of entangled bipartite systems.

Partial traces, Schmidt decomposition and spectral analysis of
translation-invariant states, checked end to end against the electron-proton
hydrogen atom.
"""

import structlog

__version__ = "1.0.0"


def configure_default_logging() -> None:
    """Route log events through standard library logging unless structlog is configured.

    Without application handlers, stdlib logging prints warnings and errors
    to stderr and drops the rest, so library use never writes to stdout. The
    CLI replaces this with its own configuration.
    """
    if not structlog.is_configured():
        structlog.configure(logger_factory=structlog.stdlib.LoggerFactory())


configure_default_logging()
