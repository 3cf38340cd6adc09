"""Analytic hydrogen 1s results and the quadrature oracles that confirm them.

The electron-proton pair is governed by

    H = p_e^2 / (2 m_e) + p_p^2 / (2 m_p) - e^2 / |r_e - r_p|,

which separates into centre-of-mass motion with total momentum P and total
mass M = m_e + m_p, and relative motion with reduced mass
m_r = m_e m_p / M. In the ground state with COM plane wave, the electron's
reduced density is homogeneous. Its correlation function is the 1s
autocorrelation

    C(s) = e^{-s/a0} (1 + s/a0 + s^2 / (3 a0^2)),

whose Fourier transform (times the box volume) is

    Omega rho_int(k) = 64 pi a0^3 / (1 + (a0 k)^2)^4.

The fourth power is fixed by the unit-trace condition:
(1 / (2 pi)^3) * integral d^3k Omega rho_int = 1 holds for exponent 4 and
diverges for exponent 1 (see trace_integral). The momentum distribution is
f_int(p) = Omega rho_int(p / hbar) / (2 pi hbar)^3, boosted rigidly by
(m_e / M) P in the lab frame, with width Delta p = hbar / a0.

Internally everything is evaluated in scaled units (hbar = a0 = 1) and
converted at the function boundary.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
import structlog
from pydantic import BaseModel, ConfigDict, Field

from hydrogen_entanglement.linalg import RealVector
from hydrogen_entanglement.utils.errors import ValidationError
from hydrogen_entanglement.utils.quadrature import integrate_interval, integrate_sine

logger = structlog.get_logger()

PROTON_ELECTRON_MASS_RATIO = 1836.15267
TAIL_WARNING_MASS = 1e-3
MIN_BINS = 16


class HydrogenParams(BaseModel):
    """Physical parameters of the electron-proton pair.

    Masses are in units of the electron mass by default; ``total_momentum`` is
    the centre-of-mass momentum P.
    """

    model_config = ConfigDict(frozen=True)

    a0: float = Field(default=1.0, gt=0.0, description="Bohr radius")
    hbar: float = Field(default=1.0, gt=0.0, description="Reduced Planck constant")
    m_e: float = Field(default=1.0, gt=0.0, description="Electron mass")
    m_p: float = Field(default=PROTON_ELECTRON_MASS_RATIO, gt=0.0, description="Proton mass")
    total_momentum: tuple[float, float, float] = Field(
        default=(0.0, 0.0, 0.0), description="Centre-of-mass momentum P"
    )

    @classmethod
    def from_mass_ratio(
        cls,
        mass_ratio: float = PROTON_ELECTRON_MASS_RATIO,
        *,
        a0: float = 1.0,
        hbar: float = 1.0,
        total_momentum: tuple[float, float, float] = (0.0, 0.0, 0.0),
    ) -> HydrogenParams:
        return cls(a0=a0, hbar=hbar, m_e=1.0, m_p=mass_ratio, total_momentum=total_momentum)

    @property
    def total_mass(self) -> float:
        return self.m_e + self.m_p

    @property
    def reduced_mass(self) -> float:
        return self.m_e * self.m_p / self.total_mass

    @property
    def electron_fraction(self) -> float:
        """m_e / M."""
        return self.m_e / self.total_mass

    @property
    def momentum_shift(self) -> RealVector:
        """(m_e / M) P, the lab-frame displacement of the electron's distribution."""
        return self.electron_fraction * np.asarray(self.total_momentum, dtype=np.float64)


def _nonnegative(x: npt.ArrayLike, name: str) -> npt.NDArray[np.float64]:
    arr = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0):
        raise ValidationError(f"{name} must be finite and >= 0", invariant=f"non_negative_{name}")
    return arr


def _out(arr: npt.NDArray[np.float64]) -> float | npt.NDArray[np.float64]:
    return float(arr) if arr.ndim == 0 else arr


def psi_1s(r: npt.ArrayLike, a0: float = 1.0) -> float | npt.NDArray[np.float64]:
    """Ground-state wavefunction e^{-r/a0} / (sqrt(pi) a0^{3/2})."""
    rr = _nonnegative(r, "r")
    return _out(np.exp(-rr / a0) / (math.sqrt(math.pi) * a0**1.5))


def autocorrelation_1s(s: npt.ArrayLike, a0: float = 1.0) -> float | npt.NDArray[np.float64]:
    """Overlap integral d^3y psi(y + s) psi(y) as a function of |s|."""
    x = _nonnegative(s, "s") / a0
    return _out(np.exp(-x) * (1.0 + x + x * x / 3.0))


def rho_tilde_int(k: npt.ArrayLike, a0: float = 1.0) -> float | npt.NDArray[np.float64]:
    """Omega rho_int(k) = 64 pi a0^3 / (1 + (a0 k)^2)^4."""
    q = _nonnegative(k, "k") * a0
    return _out(64.0 * math.pi * a0**3 / (1.0 + q * q) ** 4)


def f_int(p: npt.ArrayLike, a0: float = 1.0, hbar: float = 1.0) -> float | npt.NDArray[np.float64]:
    """Rest-frame momentum density, normalized as 4 pi integral f p^2 dp = 1."""
    q = _nonnegative(p, "p") * a0 / hbar
    return _out(64.0 * math.pi * a0**3 / (1.0 + q * q) ** 4 / (2.0 * math.pi * hbar) ** 3)


def f_lab(p: npt.ArrayLike, params: HydrogenParams) -> float | npt.NDArray[np.float64]:
    """Lab-frame momentum density f_int(|p - (m_e/M) P|) for 3-vectors p."""
    vectors = np.asarray(p, dtype=np.float64)
    if vectors.shape[-1:] != (3,):
        raise ValidationError(
            f"p must have a trailing dimension of 3, got shape {vectors.shape}",
            invariant="three_vector",
        )
    relative = np.linalg.norm(vectors - params.momentum_shift, axis=-1)
    return f_int(relative, params.a0, params.hbar)


def delta_p(params: HydrogenParams) -> float:
    """Momentum width hbar / a0 (closed form)."""
    return params.hbar / params.a0


# Scaled-unit integrands (hbar = a0 = 1).


def _phi(r: float) -> float:
    return math.exp(-r) / math.sqrt(math.pi)


def _omega_rho(q: float, exponent: int = 4) -> float:
    return 64.0 * math.pi / (1.0 + q * q) ** exponent


def _f_scaled(q: float) -> float:
    return 8.0 / (math.pi**2 * (1.0 + q * q) ** 4)


def psi_1s_norm_quadrature(a0: float = 1.0) -> float:
    """4 pi integral psi^2 r^2 dr, which must be 1."""
    return 4.0 * math.pi * integrate_interval(
        lambda r: float(psi_1s(r, a0)) ** 2 * r * r, 0.0, math.inf, label="psi_1s norm"
    )


def autocorrelation_1s_quadrature(s: float, a0: float = 1.0) -> float:
    """Two-centre overlap of 1s orbitals by radial-angular quadrature."""
    x = float(_nonnegative(s, "s")) / a0

    def angular(r: float) -> float:
        return integrate_interval(
            lambda mu: _phi(math.sqrt(max(r * r + x * x + 2.0 * r * x * mu, 0.0))),
            -1.0,
            1.0,
            epsabs=1e-14,
            label="overlap angular",
        )

    return 2.0 * math.pi * integrate_interval(
        lambda r: r * r * _phi(r) * angular(r),
        0.0,
        math.inf,
        points=[x] if x > 0 else None,
        epsabs=1e-12,
        epsrel=1e-10,
        label="overlap radial",
    )


def rho_tilde_int_quadrature(k: float, a0: float = 1.0) -> float:
    """Omega rho_int(k) as 4 pi integral C(s) sinc(ks) s^2 ds of the closed-form C."""
    q = float(_nonnegative(k, "k")) * a0
    if q == 0.0:
        value = 4.0 * math.pi * integrate_interval(
            lambda x: float(autocorrelation_1s(x)) * x * x, 0.0, math.inf, label="hankel k=0"
        )
    else:
        value = (4.0 * math.pi / q) * integrate_sine(
            lambda x: float(autocorrelation_1s(x)) * x, 0.0, q, label="hankel"
        )
    return value * a0**3


def autocorrelation_from_spectrum(s: float, a0: float = 1.0) -> float:
    """C(s) = (1 / 2 pi^2) integral k^2 Omega rho_int(k) sinc(ks) dk."""
    x = float(_nonnegative(s, "s")) / a0
    if x == 0.0:
        integral = integrate_interval(lambda q: q * q * _omega_rho(q), 0.0, math.inf, label="inverse s=0")
    else:
        integral = integrate_sine(lambda q: q * _omega_rho(q), 0.0, x, label="inverse hankel") / x
    return integral / (2.0 * math.pi**2)


def trace_integral(k_max: float = math.inf, a0: float = 1.0, exponent: int = 4) -> float:
    """(1 / (2 pi)^3) integral_{|k| < k_max} d^3k 64 pi a0^3 / (1 + (a0 k)^2)^exponent.

    Equals 1 for exponent 4 and k_max = inf; for exponent 1 it grows linearly
    with k_max.
    """
    if not k_max > 0:
        raise ValidationError(f"k_max must be positive, got {k_max}", invariant="positive_k_max")
    upper = k_max * a0
    integral = integrate_interval(
        lambda q: q * q * _omega_rho(q, exponent), 0.0, upper, label=f"trace exponent {exponent}"
    )
    return 4.0 * math.pi * integral / (2.0 * math.pi) ** 3


def delta_p_quadrature(params: HydrogenParams) -> float:
    """sqrt(4 pi integral p^4 f_int dp) in the rest frame."""
    second = 4.0 * math.pi * integrate_interval(
        lambda q: q**4 * _f_scaled(q), 0.0, math.inf, label="second moment"
    )
    return math.sqrt(second) * params.hbar / params.a0


@dataclass(frozen=True, eq=False)
class LabFrameMoments:
    """Moments of f_lab by quadrature, in physical momentum units.

    ``central`` maps order -> moment of (p_par - <p_par>) along the boost axis.
    """

    norm: float
    mean: RealVector
    mean_square: float
    central: dict[int, float]

    @property
    def delta_p(self) -> float:
        return math.sqrt(max(self.mean_square - float(self.mean @ self.mean), 0.0))


def lab_frame_moments(params: HydrogenParams, max_order: int = 4) -> LabFrameMoments:
    """Integrate f_lab in spherical coordinates about the boost axis.

    The boosted distribution is integrated as it stands in the lab frame, with
    no change of variables to the rest frame.
    """
    if not 2 <= max_order <= 4:
        raise ValidationError(f"max_order must be 2..4, got {max_order}", invariant="moment_order")
    scale = params.hbar / params.a0
    shift_vec = params.momentum_shift / scale
    shift = float(np.linalg.norm(shift_vec))
    axis = shift_vec / shift if shift > 0 else np.array([0.0, 0.0, 1.0])

    def lab_f(q: float, mu: float) -> float:
        return _f_scaled(math.sqrt(max(q * q + shift * shift - 2.0 * q * shift * mu, 0.0)))

    def moment(weight: Callable[[float, float], float]) -> float:
        def shell(q: float) -> float:
            return q * q * integrate_interval(
                lambda mu: weight(q, mu) * lab_f(q, mu), -1.0, 1.0, epsabs=1e-15, label="lab angular"
            )

        return 2.0 * math.pi * integrate_interval(
            shell,
            0.0,
            math.inf,
            points=[shift, shift + 20.0] if shift > 0 else [20.0],
            epsabs=1e-12,
            epsrel=1e-10,
            label="lab radial",
        )

    norm = moment(lambda q, mu: 1.0)
    mean_par = moment(lambda q, mu: q * mu) / norm
    mean_square = moment(lambda q, mu: q * q) / norm
    central = {
        order: moment(lambda q, mu, n=order: (q * mu - mean_par) ** n) / norm
        for order in range(2, max_order + 1)
    }
    logger.debug("Lab frame moments", shift=shift, norm=norm, mean=mean_par)
    return LabFrameMoments(
        norm=norm,
        mean=axis * mean_par * scale,
        mean_square=mean_square * scale**2,
        central={order: value * scale**order for order, value in central.items()},
    )


@dataclass(frozen=True, eq=False)
class RadialSpectrum:
    """Midpoint radial table of the isotropic rest-frame momentum distribution.

    Row j sits at k_j = (j + 1/2) dk with the 3D shell weight
    4 pi k^2 dk / (2 pi)^3, so sum(weight * omega_rho * g(hbar k)) approximates
    the momentum average of g.
    """

    k: RealVector
    omega_rho: RealVector
    f_p: RealVector
    weight: RealVector
    hbar: float = 1.0
    tail_mass: float = 0.0
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        n = self.k.shape[0]
        for name in ("omega_rho", "f_p", "weight"):
            if getattr(self, name).shape != (n,):
                raise ValidationError(f"Column {name} has the wrong length", invariant="matching_lengths")
        if np.any(self.weight < 0.0) or np.any(self.omega_rho < 0.0):
            raise ValidationError("Radial table has negative entries", invariant="non_negative")

    def trace(self) -> float:
        return float(np.sum(self.weight * self.omega_rho))

    def momentum_moment(self, order: int) -> float:
        """<|p|^order> for even orders; odd (vector) moments vanish by isotropy."""
        if order < 0:
            raise ValidationError(f"Moment order must be >= 0, got {order}", invariant="moment_order")
        if order % 2:
            return 0.0
        return float(np.sum(self.weight * self.omega_rho * (self.hbar * self.k) ** order))

    def mean_momentum(self) -> float:
        return self.momentum_moment(1)

    def mean_square_momentum(self) -> float:
        return self.momentum_moment(2)


def radial_spectrum_export(
    params: HydrogenParams,
    k_max: float,
    n_bins: int,
    *,
    tail_warning_mass: float = TAIL_WARNING_MASS,
) -> RadialSpectrum:
    """Tabulate Omega rho_int, f_p and shell weights on n_bins midpoints in (0, k_max).

    Raises:
        ValidationError: If k_max <= 0 or n_bins < 16
    """
    if not (math.isfinite(k_max) and k_max > 0):
        raise ValidationError(f"k_max must be positive, got {k_max}", invariant="positive_k_max")
    if n_bins < MIN_BINS:
        raise ValidationError(
            f"n_bins must be >= {MIN_BINS}, got {n_bins}", invariant="minimum_bins"
        )
    dk = k_max / n_bins
    k = (np.arange(n_bins) + 0.5) * dk
    omega_rho = np.asarray(rho_tilde_int(k, params.a0))
    f_p = np.asarray(f_int(params.hbar * k, params.a0, params.hbar))
    weight = 4.0 * math.pi * k * k * dk / (2.0 * math.pi) ** 3

    upper = k_max * params.a0
    tail_mass = 4.0 * math.pi * integrate_interval(
        lambda q: q * q * _omega_rho(q), upper, math.inf, label="trace tail"
    ) / (2.0 * math.pi) ** 3

    warnings: tuple[str, ...] = ()
    if tail_mass > tail_warning_mass:
        logger.warning("k-space tail beyond cutoff", k_max=k_max, tail_mass=tail_mass)
        warnings = (
            f"k-space mass {tail_mass:.3e} beyond k_max = {k_max:g} exceeds "
            f"{tail_warning_mass:g}; increase k_max",
        )
    return RadialSpectrum(
        k=k,
        omega_rho=omega_rho,
        f_p=f_p,
        weight=weight,
        hbar=params.hbar,
        tail_mass=tail_mass,
        warnings=warnings,
    )
