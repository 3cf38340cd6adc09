"""Translation-invariant single-particle densities on a periodic 1D lattice.

A homogeneous state is described by its correlation function C(s_m) at the
separations s_m = m * dx, dx = L / N, indices taken mod N. Its density matrix
rho_ab = C(x_a - x_b) * dx is circulant, so plane waves e^{ikx} diagonalize it
and the eigenvalues are

    lambda(k_n) = dx * sum_m C(s_m) e^{-i k_n s_m},   k_n = 2 pi n / L,

with n in {-N/2, ..., N/2 - 1}. lambda(k) doubles as the momentum
distribution of the particle at p = hbar k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np
import numpy.typing as npt
import structlog

from hydrogen_entanglement.linalg import ComplexMatrix, ComplexVector, RealVector
from hydrogen_entanglement.utils.errors import NumericalFailure, ValidationError

logger = structlog.get_logger()

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
SPECTRUM_SUM_TOL = 1e-9
NEGATIVITY_TOL = 1e-10
IMAGINARY_TOL = 1e-10
VARIANCE_FLOOR = 1e-12

EDGE_GUARD_BINS = 10
EDGE_MASS_WARNING = 1e-8

# Central first-derivative weights w_j for (f(j h) - f(-j h)) / h, j = 1..
STENCILS: dict[int, tuple[float, ...]] = {
    2: (1 / 2,),
    4: (2 / 3, -1 / 12),
    6: (3 / 4, -3 / 20, 1 / 60),
    8: (4 / 5, -1 / 5, 4 / 105, -1 / 280),
}


@runtime_checkable
class MomentumSpectrum(Protocol):
    """Anything that can report its first two momentum moments."""

    def mean_momentum(self) -> float: ...

    def mean_square_momentum(self) -> float: ...


@dataclass(frozen=True, eq=False)
class HomogeneousState:
    """Correlation function C(s_m) on an even lattice of N sites."""

    n_sites: int
    box_length: float
    corr: ComplexVector

    def __post_init__(self) -> None:
        values = np.array(self.corr, dtype=np.complex128).ravel()
        n = values.shape[0]
        if n != self.n_sites:
            raise ValidationError(
                f"Correlation has {n} values for {self.n_sites} sites",
                invariant="length_matches_sites",
            )
        if n < 2 or n % 2:
            raise ValidationError(
                f"Number of sites must be even and >= 2, got {n}",
                invariant="even_sites",
                details={"n_sites": n},
            )
        if not (np.isfinite(self.box_length) and self.box_length > 0):
            raise ValidationError(
                f"box_length must be positive, got {self.box_length}",
                invariant="positive_box_length",
            )
        if not np.all(np.isfinite(values)):
            raise ValidationError("Correlation has non-finite values", invariant="finite_entries")

        mirrored = np.conj(values[(-np.arange(n)) % n])
        defect = float(np.max(np.abs(values - mirrored)))
        if defect > HERMITICITY_TOL:
            raise ValidationError(
                f"C(-s) != conj(C(s)): max defect {defect:.3e}",
                invariant="hermiticity",
                details={"defect": defect},
            )
        trace = self.box_length * values[0]
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValidationError(
                f"L * C(0) = {trace.real:.12g}, expected 1",
                invariant="unit_trace",
                details={"trace": trace.real},
            )
        values.setflags(write=False)
        object.__setattr__(self, "corr", values)

    @classmethod
    def from_correlation(cls, values: npt.ArrayLike, box_length: float) -> HomogeneousState:
        arr = np.asarray(values, dtype=np.complex128).ravel()
        return cls(n_sites=arr.shape[0], box_length=float(box_length), corr=arr)

    @classmethod
    def plane_wave(cls, n_sites: int, box_length: float, index: int = 0) -> HomogeneousState:
        """Pure state e^{i k x} with k = 2 pi index / L."""
        s = np.arange(n_sites) * (box_length / n_sites)
        k = 2.0 * np.pi * index / box_length
        return cls(n_sites, box_length, np.exp(1j * k * s) / box_length)

    @property
    def dx(self) -> float:
        return self.box_length / self.n_sites

    def separations(self) -> RealVector:
        return np.arange(self.n_sites) * self.dx

    def dense_matrix(self) -> ComplexMatrix:
        """Circulant rho_ab = C(x_a - x_b) * dx."""
        idx = np.arange(self.n_sites)
        return self.corr[(idx[:, None] - idx[None, :]) % self.n_sites] * self.dx


@dataclass(frozen=True, eq=False)
class SpectralDistribution:
    """Eigenvalues lambda(k_n) on the lattice momentum grid."""

    k_values: RealVector
    lambdas: RealVector
    hbar: float
    box_length: float
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        k = np.array(self.k_values, dtype=np.float64)
        lam = np.array(self.lambdas, dtype=np.float64)
        if k.shape != lam.shape or k.ndim != 1:
            raise ValidationError(
                f"k grid {k.shape} and lambdas {lam.shape} differ",
                invariant="matching_lengths",
            )
        if not self.hbar > 0:
            raise ValidationError(f"hbar must be positive, got {self.hbar}", invariant="positive_hbar")
        smallest = float(lam.min())
        if smallest < -NEGATIVITY_TOL:
            raise ValidationError(
                f"Spectrum has negative weight {smallest:.3e}",
                invariant="non_negative",
                details={"smallest": smallest},
            )
        total = float(lam.sum())
        if abs(total - 1.0) > SPECTRUM_SUM_TOL:
            raise ValidationError(
                f"Spectrum sums to {total:.12g}, expected 1",
                invariant="unit_trace",
                details={"sum": total},
            )
        k.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "k_values", k)
        object.__setattr__(self, "lambdas", lam)

    @property
    def n_sites(self) -> int:
        return int(self.lambdas.shape[0])

    @property
    def dk(self) -> float:
        return 2.0 * np.pi / self.box_length

    def momenta(self) -> RealVector:
        return self.hbar * self.k_values

    def density_estimate(self) -> RealVector:
        """Continuum estimate f_p = lambda / (hbar dk)."""
        return self.lambdas / (self.hbar * self.dk)

    def mean_momentum(self) -> float:
        return momentum_moment(self, 1)

    def mean_square_momentum(self) -> float:
        return momentum_moment(self, 2)

    def central_moment(self, order: int) -> float:
        """sum (p - <p>)^order lambda."""
        p = self.momenta()
        return float(np.sum((p - self.mean_momentum()) ** order * self.lambdas))


def from_correlation(values: npt.ArrayLike, box_length: float) -> HomogeneousState:
    """Validate a correlation function; see HomogeneousState."""
    return HomogeneousState.from_correlation(values, box_length)


def lattice_momenta(n_sites: int, box_length: float) -> RealVector:
    """k_n = 2 pi n / L for n = -N/2 .. N/2 - 1."""
    n = np.arange(-(n_sites // 2), n_sites // 2)
    return 2.0 * np.pi * n / box_length


def edge_warnings(
    lambdas: RealVector,
    *,
    guard_bins: int = EDGE_GUARD_BINS,
    threshold: float = EDGE_MASS_WARNING,
) -> tuple[str, ...]:
    """Precision warning when lambda mass sits next to the zone edge."""
    if guard_bins <= 0:
        return ()
    mass = float(np.sum(lambdas[:guard_bins]) + np.sum(lambdas[-guard_bins:]))
    if mass <= threshold:
        return ()
    logger.warning("Spectral mass near zone edge", edge_mass=mass, guard_bins=guard_bins)
    return (
        f"spectral mass {mass:.3e} within {guard_bins} bins of the zone edge "
        f"exceeds {threshold:g}; continuum comparisons are aliased",
    )


def spectrum(
    state: HomogeneousState,
    hbar: float = 1.0,
    *,
    imaginary_tol: float = IMAGINARY_TOL,
    edge_guard_bins: int = EDGE_GUARD_BINS,
    edge_mass_warning: float = EDGE_MASS_WARNING,
) -> SpectralDistribution:
    """Diagonalize a homogeneous state by FFT.

    Raises:
        NumericalFailure: If an eigenvalue has imaginary part above imaginary_tol
    """
    raw = state.dx * np.fft.fft(state.corr)
    residue = float(np.max(np.abs(raw.imag)))
    if residue > imaginary_tol:
        raise NumericalFailure(
            f"Spectrum has imaginary residue {residue:.3e}",
            invariant="real_spectrum",
            details={"residue": residue, "tolerance": imaginary_tol},
        )
    lambdas = np.fft.fftshift(raw.real)
    return SpectralDistribution(
        k_values=lattice_momenta(state.n_sites, state.box_length),
        lambdas=lambdas,
        hbar=hbar,
        box_length=state.box_length,
        warnings=edge_warnings(lambdas, guard_bins=edge_guard_bins, threshold=edge_mass_warning),
    )


def from_spectrum(lambdas: npt.ArrayLike, box_length: float) -> HomogeneousState:
    """Inverse of spectrum(): C(s_m) from lambdas ordered n = -N/2 .. N/2 - 1."""
    lam = np.asarray(lambdas, dtype=np.float64).ravel()
    if np.any(lam < -NEGATIVITY_TOL):
        raise ValidationError("Prescribed spectrum has negative weights", invariant="non_negative")
    n = lam.shape[0]
    corr = np.fft.ifft(np.fft.ifftshift(lam)) * n / box_length
    return HomogeneousState.from_correlation(corr, box_length)


def momentum_moment(dist: SpectralDistribution, order: int) -> float:
    """sum_n (hbar k_n)^order lambda(k_n) for order 0..4."""
    if order not in (0, 1, 2, 3, 4):
        raise ValidationError(f"Moment order must be 0..4, got {order}", invariant="moment_order")
    return float(np.sum(dist.momenta() ** order * dist.lambdas))


def occupation_stddev(dist: MomentumSpectrum) -> float:
    """sqrt(<p^2> - <p>^2).

    Raises:
        NumericalFailure: If the variance is negative beyond round-off
    """
    mean = dist.mean_momentum()
    mean_square = dist.mean_square_momentum()
    variance = mean_square - mean * mean
    if variance < -VARIANCE_FLOOR * max(1.0, mean_square):
        raise NumericalFailure(
            f"Negative momentum variance {variance:.3e}",
            invariant="non_negative_variance",
            details={"variance": variance},
        )
    return float(np.sqrt(max(variance, 0.0)))


def purity(dist: SpectralDistribution) -> float:
    return float(np.sum(dist.lambdas**2))


def is_pure(dist: SpectralDistribution, tol: float = 1e-9) -> bool:
    return abs(purity(dist) - 1.0) <= tol


def boost(
    dist: SpectralDistribution,
    shift_index: int,
    *,
    edge_guard_bins: int = EDGE_GUARD_BINS,
    edge_mass_warning: float = EDGE_MASS_WARNING,
) -> SpectralDistribution:
    """Rigid shift of the spectrum by shift_index grid points (cyclic)."""
    lambdas = np.roll(dist.lambdas, int(shift_index))
    return SpectralDistribution(
        k_values=dist.k_values,
        lambdas=lambdas,
        hbar=dist.hbar,
        box_length=dist.box_length,
        warnings=edge_warnings(lambdas, guard_bins=edge_guard_bins, threshold=edge_mass_warning),
    )


def momentum_from_correlation(
    state: HomogeneousState, hbar: float = 1.0, stencil_order: int = 8
) -> float:
    """Trace-form <p> = -i hbar L C'(0) with a central difference stencil."""
    weights = STENCILS.get(stencil_order)
    if weights is None:
        raise ValidationError(
            f"Stencil order must be one of {sorted(STENCILS)}, got {stencil_order}",
            invariant="stencil_order",
        )
    n = state.n_sites
    derivative = sum(
        w * (state.corr[j % n] - state.corr[(-j) % n])
        for j, w in enumerate(weights, start=1)
    ) / state.dx
    return float(np.real(-1j * hbar * state.box_length * derivative))
