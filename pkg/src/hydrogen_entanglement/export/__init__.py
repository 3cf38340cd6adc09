"""CSV tables and JSON summaries emitted by the CLI."""

from hydrogen_entanglement.export.summary import FORMAT_VERSION, dump_summary, round_floats
from hydrogen_entanglement.export.tables import (
    SchmidtTable,
    read_radial_csv,
    read_scan_csv,
    read_schmidt_csv,
    read_spectrum_csv,
    write_radial_csv,
    write_scan_csv,
    write_schmidt_csv,
    write_spectrum_csv,
)

__all__ = [
    "FORMAT_VERSION",
    "SchmidtTable",
    "dump_summary",
    "read_radial_csv",
    "read_scan_csv",
    "read_schmidt_csv",
    "read_spectrum_csv",
    "round_floats",
    "write_radial_csv",
    "write_scan_csv",
    "write_schmidt_csv",
    "write_spectrum_csv",
]
