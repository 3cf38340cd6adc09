"""Thin wrappers around scipy.integrate.quad.

QUADPACK's own accuracy warnings are turned into log events, and a result whose
error estimate exceeds the accepted bound raises NumericalFailure instead of
being returned silently.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Callable, Sequence

import structlog
from scipy import integrate

from hydrogen_entanglement.utils.errors import NumericalFailure

logger = structlog.get_logger()

EPSABS = 1e-13
EPSREL = 1e-11
LIMIT = 400
# Reported error may exceed the request by this factor before it is an error.
ACCEPT_FACTOR = 1e4


def _check(value: float, abserr: float, epsabs: float, epsrel: float, label: str) -> float:
    bound = ACCEPT_FACTOR * max(epsabs, epsrel * abs(value))
    if not math.isfinite(value) or abserr > bound:
        raise NumericalFailure(
            f"Quadrature '{label}' did not converge: error estimate {abserr:.3e}",
            invariant="quadrature_accuracy",
            details={"value": value, "error_estimate": abserr, "bound": bound},
        )
    return value


def integrate_interval(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    *,
    points: Sequence[float] | None = None,
    epsabs: float = EPSABS,
    epsrel: float = EPSREL,
    label: str = "integral",
) -> float:
    """Adaptive Gauss-Kronrod integral of func over [lower, upper].

    ``upper`` may be ``math.inf``; breakpoints are only honoured on finite
    intervals, so an infinite range with breakpoints is split at the last one.
    """
    if points and math.isinf(upper):
        cut = max(points)
        head = integrate_interval(
            func, lower, cut, points=[p for p in points if lower < p < cut] or None,
            epsabs=epsabs, epsrel=epsrel, label=label,
        )
        tail = integrate_interval(func, cut, upper, epsabs=epsabs, epsrel=epsrel, label=label)
        return head + tail

    inner_points = [p for p in points or () if lower < p < upper] or None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            func, lower, upper, points=inner_points, epsabs=epsabs, epsrel=epsrel, limit=LIMIT
        )
    for warning in caught:
        logger.debug("Quadrature warning", label=label, message=str(warning.message))
    return _check(float(value), float(abserr), epsabs, epsrel, label)


def integrate_sine(
    func: Callable[[float], float],
    lower: float,
    omega: float,
    *,
    epsabs: float = EPSABS,
    label: str = "sine transform",
) -> float:
    """integral_lower^inf func(x) sin(omega x) dx by QUADPACK's QAWF."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            func, lower, math.inf, weight="sin", wvar=omega, epsabs=epsabs, limlst=100
        )
    for warning in caught:
        logger.debug("Quadrature warning", label=label, message=str(warning.message))
    return _check(float(value), float(abserr), epsabs, 0.0, label)
