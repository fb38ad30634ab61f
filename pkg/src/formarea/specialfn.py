"""Gamma, log-gamma and beta for positive real arguments."""

from __future__ import annotations

import math

from .numtheory import DomainError

PI = 3.14159265358979323846
EULER_GAMMA = 0.57721566490153286061

# Lanczos approximation, g = 7, nine terms (Godfrey's coefficients)
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.91893853320467274178


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"ln_gamma needs x > 0, got {x}")
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1)/x keeps the series on its accurate range
        return ln_gamma(x + 1.0) - math.log(x)
    if x == 1.0 or x == 2.0:
        return 0.0
    z = x - 1.0
    series = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        series += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(series)


def gamma(x: float) -> float:
    return math.exp(ln_gamma(x))


def beta(x: float, y: float) -> float:
    """B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta needs positive arguments, got ({x}, {y})")
    return math.exp(ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y))


def beta_trig_quadrature(x: float, y: float, target_rel_error: float = 1e-11) -> float:
    """B(x, y) as 2 * integral_0^{pi/2} sin^{2x-1} cos^{2y-1}, by tanh-sinh.

    Independent of :func:`beta`; kept as a cross-check.
    """
    if not (x > 0 and y > 0):
        raise DomainError(f"beta needs positive arguments, got ({x}, {y})")
    import numpy as np

    from .quadrature import QuadratureConfig, tanh_sinh_log

    a, b = 2.0 * x - 1.0, 2.0 * y - 1.0

    def log_integrand(d, log_d, e, log_e):
        # sin(theta) = sin(d), cos(theta) = sin(e), with d + e = pi/2
        return a * (log_d + np.log(np.sinc(d / PI))) + b * (log_e + np.log(np.sinc(e / PI)))

    value, _ = tanh_sinh_log(
        log_integrand,
        PI / 2,
        QuadratureConfig(target_rel_error=target_rel_error),
        decay_left=2.0 * x,
        decay_right=2.0 * y,
    )
    return 2.0 * value
