"""One-dimensional lattice analog of the electron-proton pair.

The pair lives on an N-site periodic ring of length L. Its wavefunction is a
bound relative part times a centre-of-mass plane wave:

    d_ij ∝ phi(x_i - x_j) exp(i K (m_e x_i + m_p x_j) / M),

with phi(x) = exp(-|x|_L / a) and |x|_L the periodic distance. Tracing out
the proton leaves a homogeneous electron density, so the Schmidt spectrum of
d can be computed twice: by dense diagonalization of rho_u, and by FFT of the
electron's correlation function. ``consistency_report`` compares the two.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
import numpy.typing as npt
import structlog

from hydrogen_entanglement.bipartite import (
    CLAMP_TOL,
    DensityOperator,
    PureBipartiteState,
    SchmidtDecomposition,
    entanglement_report,
    reduce_u,
    reduce_v,
    schmidt,
)
from hydrogen_entanglement.homogeneous import (
    EDGE_GUARD_BINS,
    EDGE_MASS_WARNING,
    IMAGINARY_TOL,
    HomogeneousState,
    SpectralDistribution,
    occupation_stddev,
    purity,
    spectrum,
)
from hydrogen_entanglement.linalg import RealVector
from hydrogen_entanglement.utils.errors import NumericalFailure, PeriodicityError, ValidationError

if TYPE_CHECKING:
    from hydrogen_entanglement.config import EigenSolverConfig

logger = structlog.get_logger()

MIN_SITES = 8
MAX_SITES = 1024
PERIODICITY_TOL = 1e-9
INVARIANCE_TOL = 1e-10

RegimeFlag = Literal["resolved", "under_resolved", "box_limited"]


def periodic_distance(x: npt.ArrayLike, box_length: float) -> npt.NDArray[np.float64]:
    """min(|x| mod L, L - |x| mod L)."""
    r = np.mod(np.abs(np.asarray(x, dtype=np.float64)), box_length)
    return np.minimum(r, box_length - r)


def com_shift_indices(com_index: int, mass_ratio: float) -> tuple[int, int]:
    """Integer grid shifts (n_e, n_p) carried by electron and proton.

    Raises:
        PeriodicityError: If (m_e/M) com_index or (m_p/M) com_index is not an
            integer, i.e. the COM phase is not periodic on the ring
    """
    electron = com_index / (1.0 + mass_ratio)
    proton = com_index * mass_ratio / (1.0 + mass_ratio)
    n_e, n_p = round(electron), round(proton)
    if abs(electron - n_e) > PERIODICITY_TOL or abs(proton - n_p) > PERIODICITY_TOL:
        raise PeriodicityError(
            f"com_index {com_index} with mass ratio {mass_ratio:g} gives electron and proton "
            f"momentum indices {electron:.6g} and {proton:.6g}; both must be integers for "
            "the centre-of-mass phase to be periodic in the box",
            com_index=com_index,
            mass_ratio=mass_ratio,
        )
    return int(n_e), int(n_p)


@dataclass(frozen=True, eq=False)
class LatticeTwoParticleState:
    """Electron (u, rows) and proton (v, columns) on an N-site ring."""

    n_sites: int
    box_length: float
    decay: float
    com_index: int
    mass_ratio: float
    state: PureBipartiteState

    @property
    def dx(self) -> float:
        return self.box_length / self.n_sites

    def positions(self) -> RealVector:
        return np.arange(self.n_sites) * self.dx

    @property
    def electron_shift_index(self) -> int:
        return com_shift_indices(self.com_index, self.mass_ratio)[0]

    @property
    def proton_shift_index(self) -> int:
        return com_shift_indices(self.com_index, self.mass_ratio)[1]


def build_state(
    n_sites: int,
    box_length: float,
    decay: float,
    com_index: int = 0,
    mass_ratio: float = 1.0,
    *,
    max_sites: int = MAX_SITES,
) -> LatticeTwoParticleState:
    """Construct the bound pair with a centre-of-mass plane wave.

    Raises:
        ValidationError: On odd or out-of-range N, or non-positive L, decay or mass ratio
        PeriodicityError: If the COM momentum is not representable on the ring
    """
    if n_sites % 2 or not MIN_SITES <= n_sites <= max_sites:
        raise ValidationError(
            f"n_sites must be even and in [{MIN_SITES}, {max_sites}], got {n_sites}",
            invariant="lattice_size",
            details={"n_sites": n_sites},
        )
    for name, value in (("box_length", box_length), ("decay", decay), ("mass_ratio", mass_ratio)):
        if not (np.isfinite(value) and value > 0):
            raise ValidationError(f"{name} must be positive, got {value}", invariant=f"positive_{name}")
    n_e, n_p = com_shift_indices(com_index, mass_ratio)

    idx = np.arange(n_sites)
    offset = (idx[:, None] - idx[None, :]) % n_sites
    dx = box_length / n_sites
    distance = np.minimum(offset, n_sites - offset) * dx
    phase = np.exp(2j * np.pi * (n_e * idx[:, None] + n_p * idx[None, :]) / n_sites)
    d = np.exp(-distance / decay) * phase
    d /= np.linalg.norm(d)

    logger.debug(
        "Built lattice pair state",
        n_sites=n_sites,
        box_length=box_length,
        decay=decay,
        com_index=com_index,
    )
    return LatticeTwoParticleState(
        n_sites=n_sites,
        box_length=float(box_length),
        decay=float(decay),
        com_index=int(com_index),
        mass_ratio=float(mass_ratio),
        state=PureBipartiteState(d),
    )


def reduced_electron_correlation(
    lattice_state: LatticeTwoParticleState,
    *,
    reduced: DensityOperator | None = None,
    invariance_tol: float = INVARIANCE_TOL,
    eigensolver: EigenSolverConfig | None = None,
) -> HomogeneousState:
    """Trace out the proton and read off C(x_i - x_k) = rho_u[i, k] / dx.

    Raises:
        NumericalFailure: If rho_u is not translation invariant within invariance_tol
    """
    rho = reduced if reduced is not None else reduce_u(lattice_state.state, eigensolver=eigensolver)
    n = lattice_state.n_sites
    dx = lattice_state.dx
    corr = rho.matrix[:, 0] / dx

    idx = np.arange(n)
    expected = corr[(idx[:, None] - idx[None, :]) % n]
    defect = float(np.max(np.abs(rho.matrix / dx - expected)))
    if defect > invariance_tol:
        raise NumericalFailure(
            f"Reduced electron density is not translation invariant (defect {defect:.3e})",
            invariant="translation_invariance",
            details={"defect": defect, "tolerance": invariance_tol},
        )
    return HomogeneousState.from_correlation(corr, lattice_state.box_length)


def reduced_proton_density(
    lattice_state: LatticeTwoParticleState, *, eigensolver: EigenSolverConfig | None = None
) -> DensityOperator:
    return reduce_v(lattice_state.state, eigensolver=eigensolver)


@dataclass(frozen=True, eq=False)
class ConsistencyReport:
    """Dense Schmidt route against the FFT route for one lattice state."""

    schmidt: SchmidtDecomposition
    spectrum: SpectralDistribution
    schmidt_lambdas: RealVector
    dft_lambdas: RealVector
    max_deviation: float
    schmidt_purity: float
    spectral_purity: float
    delta_p: float

    @property
    def warnings(self) -> tuple[str, ...]:
        return self.spectrum.warnings

    def to_dict(self) -> dict[str, float]:
        return {
            "max_deviation": self.max_deviation,
            "schmidt_purity": self.schmidt_purity,
            "spectral_purity": self.spectral_purity,
            "schmidt_trace": float(np.sum(self.schmidt_lambdas)),
            "spectral_trace": float(np.sum(self.dft_lambdas)),
        }


def consistency_report(
    lattice_state: LatticeTwoParticleState,
    tol: float = 1e-12,
    *,
    hbar: float = 1.0,
    clamp_tol: float = CLAMP_TOL,
    imaginary_tol: float = IMAGINARY_TOL,
    edge_guard_bins: int = EDGE_GUARD_BINS,
    edge_mass_warning: float = EDGE_MASS_WARNING,
    eigensolver: EigenSolverConfig | None = None,
) -> ConsistencyReport:
    """Compare sorted Schmidt lambdas with the sorted FFT spectrum."""
    rho = reduce_u(lattice_state.state, eigensolver=eigensolver)
    decomposition = schmidt(lattice_state.state, tol, clamp_tol=clamp_tol, reduced=rho)
    dist = spectrum(
        reduced_electron_correlation(lattice_state, reduced=rho),
        hbar,
        imaginary_tol=imaginary_tol,
        edge_guard_bins=edge_guard_bins,
        edge_mass_warning=edge_mass_warning,
    )
    schmidt_sorted = np.sort(np.asarray(decomposition.lambdas))[::-1]
    dft_sorted = np.sort(np.asarray(dist.lambdas))[::-1]
    deviation = float(np.max(np.abs(schmidt_sorted - dft_sorted)))
    report = ConsistencyReport(
        schmidt=decomposition,
        spectrum=dist,
        schmidt_lambdas=schmidt_sorted,
        dft_lambdas=dft_sorted,
        max_deviation=deviation,
        schmidt_purity=float(np.sum(schmidt_sorted**2)),
        spectral_purity=purity(dist),
        delta_p=occupation_stddev(dist),
    )
    logger.info(
        "Lattice consistency",
        n_sites=lattice_state.n_sites,
        decay=lattice_state.decay,
        max_deviation=deviation,
    )
    return report


@dataclass(frozen=True)
class ScanRow:
    decay: float
    rank: int
    purity: float
    entropy: float
    delta_p: float
    regime_flag: RegimeFlag


def regime_flag(decay: float, n_sites: int, box_length: float) -> RegimeFlag:
    """Well resolved when 4 dx <= decay <= L/8."""
    dx = box_length / n_sites
    slack = 1e-12 * box_length
    if decay < 4.0 * dx - slack:
        return "under_resolved"
    if decay > box_length / 8.0 + slack:
        return "box_limited"
    return "resolved"


def _scan_item(
    decay: float,
    n_sites: int,
    box_length: float,
    com_index: int,
    mass_ratio: float,
    hbar: float,
    tol: float,
    eigensolver: EigenSolverConfig | None,
) -> ScanRow:
    pair = build_state(n_sites, box_length, decay, com_index, mass_ratio)
    rho = reduce_u(pair.state, eigensolver=eigensolver)
    report = entanglement_report(schmidt(pair.state, tol, reduced=rho))
    dist = spectrum(reduced_electron_correlation(pair, reduced=rho), hbar, edge_guard_bins=0)
    flag = regime_flag(decay, n_sites, box_length)
    if flag != "resolved":
        logger.warning("Scan decay outside resolved regime", decay=decay, regime=flag)
    return ScanRow(
        decay=float(decay),
        rank=report.schmidt_rank,
        purity=report.purity,
        entropy=report.entropy,
        delta_p=occupation_stddev(dist),
        regime_flag=flag,
    )


def entanglement_vs_decay_scan(
    n_sites: int,
    box_length: float,
    decays: Sequence[float],
    *,
    com_index: int = 0,
    mass_ratio: float = 1.0,
    hbar: float = 1.0,
    tol: float = 1e-12,
    workers: int = 1,
    eigensolver: EigenSolverConfig | None = None,
) -> list[ScanRow]:
    """Entanglement measures and momentum width for each decay length.

    Rows come back in input order. Decays outside [4 dx, L/8] are computed and
    flagged, not rejected.
    """
    if not decays:
        raise ValidationError("Decay list is empty", invariant="non_empty_scan")
    if any(not (np.isfinite(a) and a > 0) for a in decays):
        raise ValidationError("All decays must be positive", invariant="positive_decay")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}", invariant="positive_workers")

    def run(decay: float) -> ScanRow:
        return _scan_item(decay, n_sites, box_length, com_index, mass_ratio, hbar, tol, eigensolver)

    logger.info("Starting decay scan", n_sites=n_sites, points=len(decays), workers=workers)
    if workers == 1:
        return [run(a) for a in decays]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, decays))


def scan_constant(rows: Sequence[ScanRow]) -> dict[str, float | int]:
    """Statistics of delta_p * decay over the resolved rows.

    Raises:
        ValidationError: If no row is in the resolved regime
    """
    products = np.array([r.delta_p * r.decay for r in rows if r.regime_flag == "resolved"])
    if products.size == 0:
        raise ValidationError("No scan row lies in the resolved regime", invariant="resolved_rows")
    return {
        "mean": float(products.mean()),
        "min": float(products.min()),
        "max": float(products.max()),
        "spread": float(products.max() / products.min() - 1.0),
        "resolved_rows": int(products.size),
    }
