"""CSV writers and readers for the CLI tables.

Every table has a mandatory header row and numbers in ``%.12e``. Readers parse
a table back and re-validate it through the type that produced it, so a file
that no longer satisfies its invariants is rejected with ValidationError.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np

from hydrogen_entanglement.bipartite import SchmidtDecomposition
from hydrogen_entanglement.homogeneous import SpectralDistribution
from hydrogen_entanglement.hydrogen import RadialSpectrum
from hydrogen_entanglement.lattice import ScanRow
from hydrogen_entanglement.linalg import RealVector
from hydrogen_entanglement.utils.errors import ValidationError

SCHMIDT_COLUMNS = ("index", "lambda", "cumulative")
SPECTRUM_COLUMNS = ("k", "lambda", "f_p")
RADIAL_COLUMNS = ("k", "omega_rho", "f_p", "weight")
SCAN_COLUMNS = ("decay", "rank", "purity", "entropy", "delta_p", "regime_flag")
REGIME_FLAGS = ("resolved", "under_resolved", "box_limited")

# Values are printed with 13 significant digits.
ROUNDTRIP_RTOL = 1e-11


def format_value(value: object) -> str:
    if isinstance(value, (bool, str)):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.12e" % float(value)  # type: ignore[arg-type]


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def write_schmidt_csv(stream: TextIO, decomposition: SchmidtDecomposition) -> None:
    lambdas = np.asarray(decomposition.lambdas)
    cumulative = np.cumsum(lambdas)
    write_csv(stream, SCHMIDT_COLUMNS, zip(range(lambdas.size), lambdas, cumulative, strict=True))


def write_spectrum_csv(stream: TextIO, dist: SpectralDistribution) -> None:
    write_csv(
        stream,
        SPECTRUM_COLUMNS,
        zip(dist.k_values, dist.lambdas, dist.density_estimate(), strict=True),
    )


def write_radial_csv(stream: TextIO, table: RadialSpectrum) -> None:
    write_csv(
        stream,
        RADIAL_COLUMNS,
        zip(table.k, table.omega_rho, table.f_p, table.weight, strict=True),
    )


def write_scan_csv(stream: TextIO, rows: Sequence[ScanRow]) -> None:
    write_csv(
        stream,
        SCAN_COLUMNS,
        ((r.decay, r.rank, r.purity, r.entropy, r.delta_p, r.regime_flag) for r in rows),
    )


def _read_rows(source: str | Path | TextIO, columns: Sequence[str]) -> list[list[str]]:
    if isinstance(source, (str, Path)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise ValidationError(
                f"Cannot read table {source}: {e.strerror or e}", invariant="input_readable"
            ) from e
        stream: TextIO = io.StringIO(text)
    else:
        stream = source
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or tuple(header) != tuple(columns):
        raise ValidationError(
            f"Expected header {','.join(columns)}, got {header}",
            invariant="csv_header",
            details={"expected": list(columns), "found": header},
        )
    rows = [row for row in reader if row]
    for number, row in enumerate(rows, start=2):
        if len(row) != len(columns):
            raise ValidationError(
                f"Line {number} has {len(row)} fields, expected {len(columns)}",
                invariant="csv_row_width",
            )
    return rows


def _column(rows: list[list[str]], j: int, name: str) -> RealVector:
    try:
        values = np.array([float(row[j]) for row in rows], dtype=np.float64)
    except ValueError as e:
        raise ValidationError(f"Column {name} is not numeric: {e}", invariant="csv_numeric") from e
    if not np.all(np.isfinite(values)):
        raise ValidationError(f"Column {name} has non-finite values", invariant="csv_numeric")
    return values


@dataclass(frozen=True, eq=False)
class SchmidtTable:
    """Schmidt spectrum as read back from CSV."""

    lambdas: RealVector
    cumulative: RealVector

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.lambdas > 1e-12))


def read_schmidt_csv(source: str | Path | TextIO) -> SchmidtTable:
    """Parse a Schmidt table and check it is a valid descending spectrum."""
    rows = _read_rows(source, SCHMIDT_COLUMNS)
    index = _column(rows, 0, "index")
    lambdas = _column(rows, 1, "lambda")
    cumulative = _column(rows, 2, "cumulative")
    if not np.array_equal(index, np.arange(len(rows))):
        raise ValidationError("Schmidt index column must count from 0", invariant="csv_index")
    if np.any(lambdas < 0) or np.any(np.diff(lambdas) > 0):
        raise ValidationError("Schmidt lambdas must be non-negative and descending", invariant="descending")
    if abs(lambdas.sum() - 1.0) > 1e-10:
        raise ValidationError(f"Schmidt lambdas sum to {lambdas.sum():.12g}", invariant="unit_trace")
    if not np.allclose(np.cumsum(lambdas), cumulative, rtol=ROUNDTRIP_RTOL, atol=1e-12):
        raise ValidationError("cumulative column disagrees with lambda", invariant="cumulative")
    return SchmidtTable(lambdas=lambdas, cumulative=cumulative)


def read_spectrum_csv(source: str | Path | TextIO, *, hbar: float = 1.0) -> SpectralDistribution:
    """Parse a spectrum table into a validated SpectralDistribution."""
    rows = _read_rows(source, SPECTRUM_COLUMNS)
    k = _column(rows, 0, "k")
    lambdas = _column(rows, 1, "lambda")
    f_p = _column(rows, 2, "f_p")
    if k.size < 2:
        raise ValidationError("Spectrum table needs at least two rows", invariant="csv_rows")
    box_length = 2.0 * math.pi / float(k[1] - k[0])
    dist = SpectralDistribution(k_values=k, lambdas=lambdas, hbar=hbar, box_length=box_length)
    if not np.allclose(dist.density_estimate(), f_p, rtol=ROUNDTRIP_RTOL, atol=1e-300):
        raise ValidationError("f_p column disagrees with lambda / (hbar dk)", invariant="f_p_column")
    return dist


def read_radial_csv(source: str | Path | TextIO, *, hbar: float = 1.0) -> RadialSpectrum:
    """Parse a radial table into a RadialSpectrum and check the midpoint grid."""
    rows = _read_rows(source, RADIAL_COLUMNS)
    k = _column(rows, 0, "k")
    table = RadialSpectrum(
        k=k,
        omega_rho=_column(rows, 1, "omega_rho"),
        f_p=_column(rows, 2, "f_p"),
        weight=_column(rows, 3, "weight"),
        hbar=hbar,
    )
    dk = 2.0 * float(k[0]) if k.size else 0.0
    expected = (np.arange(k.size) + 0.5) * dk
    if not dk > 0 or not np.allclose(k, expected, rtol=1e-10):
        raise ValidationError("k column is not a uniform midpoint grid", invariant="midpoint_grid")
    return table


def read_scan_csv(source: str | Path | TextIO) -> list[ScanRow]:
    """Parse a decay scan table."""
    rows = _read_rows(source, SCAN_COLUMNS)
    parsed = []
    for row in rows:
        flag = row[5]
        if flag not in REGIME_FLAGS:
            raise ValidationError(f"Unknown regime flag {flag!r}", invariant="regime_flag")
        try:
            decay, rank = float(row[0]), int(row[1])
            purity, entropy, delta_p = float(row[2]), float(row[3]), float(row[4])
        except ValueError as e:
            raise ValidationError(f"Scan row is not numeric: {e}", invariant="csv_numeric") from e
        if not (decay > 0 and rank >= 1 and 0 < purity <= 1 + 1e-12 and entropy >= 0 and delta_p >= 0):
            raise ValidationError(f"Scan row out of range: {row}", invariant="scan_row")
        parsed.append(
            ScanRow(
                decay=decay,
                rank=rank,
                purity=purity,
                entropy=entropy,
                delta_p=delta_p,
                regime_flag=flag,  # type: ignore[arg-type]
            )
        )
    return parsed
