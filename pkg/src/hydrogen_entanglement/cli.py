"""Command-line interface.

    hydrogen-entanglement schmidt STATE.json [--out FILE] [--summary FILE] [--tol T]
    hydrogen-entanglement hydrogen [--a0 A] [--hbar H] [--mass-ratio R]
                                   [--total-momentum PX PY PZ] [--k-max K] [--n-bins N]
    hydrogen-entanglement lattice --n-sites N --box-length L (--decay A | --decays A,B,..)
                                  [--com-index K] [--mass-ratio R] [--workers W]

Exit codes: 0 success, 2 validation error, 3 numerical failure. Errors are
printed to stderr as one JSON line; logs also go to stderr so ``--out -``
keeps stdout for the CSV table.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

import pydantic
import structlog

from hydrogen_entanglement import __version__
from hydrogen_entanglement.config import LoggingConfig, Settings
from hydrogen_entanglement.handlers import HANDLERS
from hydrogen_entanglement.schemas.run import (
    HydrogenRunConfig,
    LatticeRunConfig,
    RunConfig,
    SchmidtRunConfig,
)
from hydrogen_entanglement.utils.errors import ConfigurationError, ValidationError

RUN_CONFIGS: dict[str, type[RunConfig]] = {
    "schmidt": SchmidtRunConfig,
    "hydrogen": HydrogenRunConfig,
    "lattice": LatticeRunConfig,
}


def configure_logging(config: LoggingConfig, level: str | None = None) -> None:
    """Configure structlog to write to stderr at the configured level."""
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False)
            if config.format == "console"
            else structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, (level or config.level).upper(), logging.WARNING)
        ),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def _decay_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e
    if not values:
        raise argparse.ArgumentTypeError("decay list is empty")
    return values


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--out", default="-", help="CSV output file ('-' for stdout, the default)"
    )
    sub.add_argument(
        "--summary",
        default=None,
        help=(
            "JSON summary file (default: <out stem>.summary.json, or stderr with --out -; "
            "logs below ERROR are then dropped unless --log-level is given)"
        ),
    )
    sub.add_argument(
        "--tol",
        type=float,
        default=None,
        help="Rank tolerance on Schmidt eigenvalues, in (0, 1e-3] (default TOL_RANK = 1e-12)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hydrogen-entanglement",
        description=(
            "Entanglement analysis of bipartite pure states, validated on the "
            "electron-proton hydrogen atom. Numbers are written in %.12e."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Override LOG_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    schmidt = subparsers.add_parser(
        "schmidt",
        help="Schmidt decomposition of a JSON state",
        description=(
            "Reads {dim_u, dim_v, re, im}; writes columns index, lambda, cumulative. "
            "States with |norm - 1| <= 1e-6 are renormalized with a warning."
        ),
    )
    schmidt.add_argument("input", help="JSON state file")
    schmidt.add_argument(
        "--norm-tol",
        type=float,
        default=None,
        help="Accepted |norm - 1| before rejecting the state (default 1e-6)",
    )
    _add_common(schmidt)

    hydrogen = subparsers.add_parser(
        "hydrogen",
        help="Analytic hydrogen 1s momentum distribution",
        description="Writes columns k, omega_rho, f_p, weight on a midpoint radial grid.",
    )
    hydrogen.add_argument("--a0", type=float, default=None, help="Bohr radius (default 1)")
    hydrogen.add_argument("--hbar", type=float, default=None, help="hbar (default 1)")
    hydrogen.add_argument(
        "--mass-ratio", type=float, default=None, help="m_p/m_e (default 1836.15267)"
    )
    hydrogen.add_argument(
        "--total-momentum",
        type=float,
        nargs=3,
        metavar=("PX", "PY", "PZ"),
        default=None,
        help="Centre-of-mass momentum P (default 0 0 0)",
    )
    hydrogen.add_argument("--k-max", type=float, default=None, help="Radial cutoff in 1/length")
    hydrogen.add_argument("--n-bins", type=int, default=None, help="Radial bins (>= 16)")
    _add_common(hydrogen)

    lattice = subparsers.add_parser(
        "lattice",
        help="1D lattice electron-proton analog",
        description=(
            "With --decay writes columns k, lambda, f_p plus a Schmidt/FFT consistency "
            "summary; with --decays writes columns decay, rank, purity, entropy, "
            "delta_p, regime_flag."
        ),
    )
    lattice.add_argument("--n-sites", type=int, default=64, help="Even lattice size, 8..1024")
    lattice.add_argument("--box-length", type=float, default=40.0, help="Ring length L")
    mode = lattice.add_mutually_exclusive_group(required=True)
    mode.add_argument("--decay", type=float, help="Decay length a of the bound pair")
    mode.add_argument("--decays", type=_decay_list, help="Comma-separated decay lengths to scan")
    lattice.add_argument("--com-index", type=int, default=0, help="Centre-of-mass momentum index")
    lattice.add_argument("--mass-ratio", type=float, default=1.0, help="m_p/m_e (default 1)")
    lattice.add_argument("--hbar", type=float, default=1.0, help="hbar (default 1)")
    lattice.add_argument(
        "--workers", type=int, default=None, help="Threads for --decays (default LATTICE_SCAN_WORKERS)"
    )
    _add_common(lattice)
    return parser


def _run_config_values(args: argparse.Namespace, settings: Settings) -> dict[str, Any]:
    values: dict[str, Any] = {
        "subcommand": args.subcommand,
        "out": args.out,
        "summary": args.summary,
        "tol": args.tol if args.tol is not None else settings.tolerances.rank,
    }
    if args.subcommand == "schmidt":
        values["input"] = args.input
        values["norm_tol"] = (
            args.norm_tol if args.norm_tol is not None else settings.tolerances.state_norm_input
        )
    elif args.subcommand == "hydrogen":
        defaults = settings.hydrogen
        values.update(
            a0=args.a0 if args.a0 is not None else defaults.a0,
            hbar=args.hbar if args.hbar is not None else defaults.hbar,
            mass_ratio=args.mass_ratio if args.mass_ratio is not None else defaults.mass_ratio,
            total_momentum=tuple(args.total_momentum or (0.0, 0.0, 0.0)),
            k_max=args.k_max if args.k_max is not None else defaults.k_max,
            n_bins=args.n_bins if args.n_bins is not None else defaults.n_bins,
        )
    else:
        values.update(
            n_sites=args.n_sites,
            box_length=args.box_length,
            decay=args.decay,
            decays=args.decays,
            com_index=args.com_index,
            mass_ratio=args.mass_ratio,
            hbar=args.hbar,
            workers=args.workers if args.workers is not None else settings.lattice.scan_workers,
        )
    return values


def _report(error: ValidationError) -> int:
    print(json.dumps(error.to_dict(), sort_keys=True, default=str), file=sys.stderr)
    return error.exit_code


def _invalid(e: pydantic.ValidationError, error_type: type[ValidationError]) -> ValidationError:
    first = e.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "config"
    message = f"Invalid value for '{location}': {first.get('msg')}"
    if error_type is ConfigurationError:
        return ConfigurationError(message, config_key=location)
    return ValidationError(message, invariant="run_config", details={"field": location})


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the subcommand and return its exit code."""
    try:
        settings = Settings()
    except pydantic.ValidationError as e:
        return _report(_invalid(e, ConfigurationError))

    args = build_parser().parse_args(argv)
    try:
        config = RUN_CONFIGS[args.subcommand](**_run_config_values(args, settings))
    except pydantic.ValidationError as e:
        return _report(_invalid(e, ValidationError))

    # stderr carries the JSON summary; only errors may share it unless asked for
    level = args.log_level
    if level is None and config.summary_target() == "-":
        level = "ERROR"
    configure_logging(settings.logging, level)
    logger = structlog.get_logger().bind(service=settings.service_name)

    logger.info("Running command", subcommand=args.subcommand, version=__version__)
    handler = HANDLERS[args.subcommand](settings)
    return handler.run(config)


if __name__ == "__main__":
    sys.exit(main())
