"""Area of the fundamental region, integral of |F(x, 1)|**(-2/n) over the line.

The line is cut at the real roots of F(x, 1).  Each bounded piece is split at
the midpoint between adjacent roots so it has one singular endpoint, and the
two unbounded ends are mapped onto (0, 1] with x = R - 1 + 1/t.  Every piece
is integrated with tanh-sinh, which tolerates the |x - r|**(-alpha) endpoint
behaviour without any extra substitution.

The integrand is evaluated in log space from the factored form

    log|p(x)| = sum_i m_i log|x - r_i| + log|h(x)|

where h is the real-root-free cofactor.  Near a root the distance x - r is
produced by the quadrature nodes directly, so nothing cancels, and the
exponentially large coefficients of T_n or U_n never meet float arithmetic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional

import mpmath
import numpy as np

from .numtheory import DomainError
from .polycore import BinaryForm, IntPolynomial, discriminant
from .rootfind import RootSet, isolate_real_roots, squarefree_decomposition

__all__ = [
    "AccuracyError",
    "AreaResult",
    "CurvePoint",
    "QuadratureConfig",
    "RootSet",
    "Status",
    "area_integral",
    "curve_samples",
    "integral_alpha",
    "isolate_real_roots",
    "polar_radius",
    "tanh_sinh_log",
]

_LOG_HALF_PI = math.log(math.pi / 2)
_LOG2 = math.log(2.0)
# nats below the integrand scale at which the node range is cut off
_TRUNCATION_NATS = 45.0
_U_MAX_CAP = 10.0


class Status(str, Enum):
    FINITE = "Finite"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class QuadratureConfig:
    target_rel_error: float = 1e-9
    max_level: int = 12
    tail_cutoff: Optional[float] = None
    workers: int = 1

    def __post_init__(self):
        if not 0 < self.target_rel_error < 1:
            raise ValueError("target_rel_error must lie in (0, 1)")
        if self.max_level < 3:
            raise ValueError("max_level must be at least 3")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class AreaResult:
    value: float
    abs_error_estimate: float
    status: Status

    @property
    def finite(self) -> bool:
        return self.status is Status.FINITE

    @classmethod
    def divergent(cls) -> "AreaResult":
        return cls(math.inf, 0.0, Status.DIVERGENT)


class AccuracyError(ArithmeticError):
    """The target accuracy was not reached at the deepest level."""

    def __init__(self, message: str, value: float, estimate: float):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


# ---------------------------------------------------------------------------
# tanh-sinh core


def _u_max(decay: float) -> float:
    # |log d| grows like (pi/2) e^u, so d**decay < e^-N once u > log(2N/(pi decay))
    decay = max(decay, 1e-3)
    return min(math.log(2.0 * _TRUNCATION_NATS / (math.pi * decay)) + 0.5, _U_MAX_CAP)


def _nodes(u: np.ndarray, H: float):
    t = (math.pi / 2) * np.sinh(u)
    log_H = math.log(H)
    log_sig_pos = -np.logaddexp(0.0, -2.0 * t)  # log sigma(2t), d = H sigma(2t)
    log_sig_neg = -np.logaddexp(0.0, 2.0 * t)  # log sigma(-2t), e = H - d
    log_d = log_H + log_sig_pos
    log_e = log_H + log_sig_neg
    log_w = log_H + _LOG2 + log_sig_pos + log_sig_neg + _LOG_HALF_PI + np.log(np.cosh(u))
    return np.exp(log_d), log_d, np.exp(log_e), log_e, log_w


def tanh_sinh_log(
    log_f: Callable,
    H: float,
    cfg: QuadratureConfig = QuadratureConfig(),
    decay_left: float = 1.0,
    decay_right: float = 1.0,
) -> tuple[float, float]:
    """Integrate exp(log_f) over [0, H] by tanh-sinh with level halving.

    ``log_f(d, log_d, e, log_e)`` receives the distances d to 0 and e to H
    (both computed without cancellation) and returns the log of the
    integrand.  ``decay_left``/``decay_right`` are the exponents beta in
    f ~ dist**(beta - 1) at each end and only set the node range.

    Returns ``(value, abs_error_estimate)``; raises AccuracyError when the
    level-to-level change has not dropped below the target by ``max_level``.
    """
    if not H > 0:
        raise ValueError("interval length must be positive")
    u_lo = -_u_max(decay_left)
    u_hi = _u_max(decay_right)

    def partial(u):
        d, log_d, e, log_e, log_w = _nodes(u, H)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            vals = np.exp(log_f(d, log_d, e, log_e) + log_w)
        vals = np.where(np.isfinite(vals), vals, 0.0)
        return math.fsum(vals)

    h = 1.0
    j = np.arange(math.ceil(u_lo), math.floor(u_hi) + 1, dtype=float)
    total = partial(j)
    estimate = h * total
    prev = estimate
    diff = math.inf
    for level in range(1, cfg.max_level + 1):
        h /= 2.0
        k0 = math.ceil((u_lo / h - 1) / 2)
        k1 = math.floor((u_hi / h - 1) / 2)
        u_new = (2.0 * np.arange(k0, k1 + 1, dtype=float) + 1.0) * h
        total += partial(u_new)
        estimate = h * total
        diff = abs(estimate - prev)
        prev = estimate
        if level >= 3 and diff <= cfg.target_rel_error * abs(estimate):
            return estimate, max(diff, 8 * np.finfo(float).eps * abs(estimate))
    raise AccuracyError(
        f"tanh-sinh did not reach relative error {cfg.target_rel_error:g} "
        f"(last change {diff:.3g})",
        estimate,
        diff,
    )


# ---------------------------------------------------------------------------
# factored evaluation of log|p|


@dataclass(frozen=True)
class _Factored:
    roots: np.ndarray  # distinct real roots, increasing
    mults: np.ndarray
    cofactor: np.ndarray  # h, low degree first; includes the leading coefficient
    degree: int

    def log_abs_cofactor(self, x: np.ndarray) -> np.ndarray:
        h = self.cofactor
        k = len(h) - 1
        if k == 0:
            return np.full_like(x, math.log(abs(h[0])))
        ax = np.abs(x)
        out = np.empty_like(x)
        small = ax <= 1.0
        if np.any(small):
            out[small] = np.log(np.abs(np.polyval(h[::-1], x[small])))
        big = ~small
        if np.any(big):
            xb = x[big]
            # h(x) = x^k * sum_j h_j x^(j-k)
            out[big] = k * np.log(ax[big]) + np.log(np.abs(np.polyval(h, 1.0 / xb)))
        return out

    def log_abs(self, x: np.ndarray, skip: int = -1, log_dist=None) -> np.ndarray:
        """log|p(x)|; root ``skip`` contributes m*log_dist instead of m*log|x - r|."""
        acc = self.log_abs_cofactor(x)
        for i, (r, m) in enumerate(zip(self.roots, self.mults)):
            if i == skip:
                acc = acc + m * log_dist
            else:
                acc = acc + m * np.log(np.abs(x - r))
        return acc

    def log_abs_tail(self, t: np.ndarray, log_t: np.ndarray, base: float, side: int) -> np.ndarray:
        """log|p(x)| + degree*log t at x = side*(base + 1/t), base >= max root distance."""
        acc = np.zeros_like(t)
        for r, m in zip(self.roots, self.mults):
            # |x - r| * t = |1 + (base - side*r) t|
            acc = acc + m * np.log1p((base - side * r) * t)
        h = self.cofactor
        k = len(h) - 1
        if k == 0:
            acc = acc + math.log(abs(h[0]))
        else:
            s = side * t / (1.0 + base * t)  # 1/x
            acc = acc + k * np.log1p(base * t) + np.log(np.abs(np.polyval(h, s)))
        return acc


def _cofactor(p: IntPolynomial, rs: RootSet) -> np.ndarray:
    if rs.total_multiplicity == p.degree:
        return np.array([float(p.lead)])
    # deflate the real roots in extended precision, polishing each by Newton first
    digits = max(len(str(abs(c))) for c in p.coeffs)
    with mpmath.workdps(40 + digits + p.degree):
        coeffs = [mpmath.mpf(c) for c in p.coeffs]
        for factor, mult in squarefree_decomposition(p):
            fc = [mpmath.mpf(c) for c in factor.coeffs]
            dfc = [k * fc[k] for k in range(1, len(fc))]
            for r in rs:
                if r.multiplicity != mult:
                    continue
                if not _factor_has_root(factor, r):
                    continue
                mid = (r.lo + r.hi) / 2
                z = mpmath.mpf(mid.numerator) / mid.denominator
                if not r.exact:
                    for _ in range(8):
                        z = z - mpmath.polyval(fc[::-1], z) / mpmath.polyval(dfc[::-1], z)
                for _ in range(mult):
                    coeffs = _synthetic_div(coeffs, z)
        return np.array([float(c) for c in coeffs])


def _factor_has_root(factor: IntPolynomial, r) -> bool:
    from .rootfind import _sign_at

    if r.exact:
        return _sign_at(factor, r.lo) == 0
    return _sign_at(factor, r.lo) * _sign_at(factor, r.hi) < 0


def _synthetic_div(coeffs, z):
    # coeffs low first; returns quotient of division by (x - z)
    m = len(coeffs) - 1
    out = [None] * m
    acc = coeffs[m]
    for k in range(m - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * z
    return out


@lru_cache(maxsize=512)
def _factored(p: IntPolynomial) -> _Factored:
    rs = isolate_real_roots(p)
    return _Factored(
        roots=np.array(rs.locations, dtype=float),
        mults=np.array(rs.multiplicities, dtype=float),
        cofactor=_cofactor(p, rs),
        degree=p.degree,
    )


# ---------------------------------------------------------------------------
# panels


@dataclass(frozen=True)
class _Panel:
    kind: str  # "root" or "tail"
    index: int  # root index for "root", side (+1/-1) for "tail"
    direction: int  # +1 if the panel extends right of the root
    length: float


def _panels(fp: _Factored, cutoff: Optional[float]) -> tuple[list[_Panel], float, float]:
    roots = fp.roots
    if len(roots):
        hi = math.ceil(roots[-1]) + 1.0
        lo = math.floor(roots[0]) - 1.0
    else:
        hi, lo = 1.0, -1.0
    if cutoff is not None:
        hi = max(hi, math.ceil(cutoff))
        lo = min(lo, -math.ceil(cutoff))
    hi = max(hi, 1.0)
    lo = min(lo, -1.0)
    panels = []
    for i, r in enumerate(roots):
        left = roots[i - 1] if i > 0 else None
        right = roots[i + 1] if i + 1 < len(roots) else None
        panels.append(_Panel("root", i, -1, (r - left) / 2 if left is not None else r - lo))
        panels.append(_Panel("root", i, +1, (right - r) / 2 if right is not None else hi - r))
    return panels, lo, hi


def _integrate_panel(fp: _Factored, alpha: float, panel: _Panel, cfg: QuadratureConfig,
                     lo: float, hi: float):
    m = fp.degree
    if panel.kind == "root":
        i, s = panel.index, panel.direction
        r = float(fp.roots[i])
        mult = float(fp.mults[i])

        def log_f(d, log_d, e, log_e):
            return -alpha * fp.log_abs(r + s * d, skip=i, log_dist=log_d)

        return tanh_sinh_log(log_f, panel.length, cfg, decay_left=1.0 - mult * alpha)
    if panel.kind == "tail":
        side = panel.index
        # x = side*(base + 1/t) with base = |cut| - 1
        base = (hi if side > 0 else -lo) - 1.0

        def log_f(t, log_t, e, log_e):
            return -alpha * fp.log_abs_tail(t, log_t, base, side) + (alpha * m - 2.0) * log_t

        return tanh_sinh_log(log_f, 1.0, cfg, decay_left=alpha * m - 1.0)
    # "gap": root-free [lo, hi] when p has no real roots
    def log_f(d, log_d, e, log_e):
        return -alpha * fp.log_abs(lo + d)

    return tanh_sinh_log(log_f, hi - lo, cfg)


def _integrate(p: IntPolynomial, alpha: float, cfg: QuadratureConfig) -> AreaResult:
    fp = _factored(p)
    panels, lo, hi = _panels(fp, cfg.tail_cutoff)
    if not len(fp.roots):
        panels.append(_Panel("gap", 0, 0, hi - lo))
    panels.append(_Panel("tail", +1, 0, 1.0))
    panels.append(_Panel("tail", -1, 0, 1.0))

    def run(panel):
        return _integrate_panel(fp, alpha, panel, cfg, lo, hi)

    if cfg.workers > 1 and len(panels) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(run, panels))
    else:
        parts = [run(pn) for pn in panels]
    value = math.fsum(v for v, _ in parts)
    err = math.fsum(e for _, e in parts)
    return AreaResult(value, err, Status.FINITE)


def integral_alpha(p: IntPolynomial, alpha: float, cfg: QuadratureConfig = QuadratureConfig()) -> AreaResult:
    """Integral of |p(x)|**(-alpha) over the real line, 0 < alpha < 1.

    Divergence is decided exactly: the tail needs deg(p)*alpha > 1 and every
    real root of multiplicity m needs m*alpha < 1.
    """
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if p.is_zero:
        raise DomainError("integrand of the zero polynomial")
    if p.degree * alpha <= 1:
        return AreaResult.divergent()
    rs = isolate_real_roots(p)
    if any(m * alpha >= 1 for m in rs.multiplicities):
        return AreaResult.divergent()
    return _integrate(p, float(alpha), cfg)


def area_integral(f: BinaryForm, cfg: QuadratureConfig = QuadratureConfig()) -> AreaResult:
    """Area of {|F(x, y)| <= 1}; Divergent for degree < 3 or zero discriminant."""
    if f.form_degree < 3 or discriminant(f) == 0:
        return AreaResult.divergent()
    return _integrate(f.poly, 2.0 / f.form_degree, cfg)


# ---------------------------------------------------------------------------
# level curve samples


RAY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class CurvePoint:
    theta: float
    x: Optional[float]
    y: Optional[float]

    @property
    def is_ray(self) -> bool:
        return self.x is None


def polar_radius(f: BinaryForm, theta: float) -> float:
    """r with |F(r cos t, r sin t)| = 1; inf along a direction where F vanishes."""
    c, s = math.cos(theta), math.sin(theta)
    val = abs(sum(a * c**k * s ** (f.form_degree - k) for k, a in enumerate(f.homogeneous_coeffs()) if a))
    if val < RAY_THRESHOLD:
        return math.inf
    return val ** (-1.0 / f.form_degree)


def asymptote_angles(f: BinaryForm) -> list[float]:
    """Directions in [0, 2 pi) along which F vanishes (the curve runs off to infinity)."""
    angles = [math.atan2(1.0, r) for r in isolate_real_roots(f.poly).locations]
    if f.poly.degree < f.form_degree:
        angles.append(0.0)  # y divides F
    out = []
    for a in angles:
        out += [a % (2 * math.pi), (a + math.pi) % (2 * math.pi)]
    return sorted(out)


def curve_samples(f: BinaryForm, count: int) -> list[CurvePoint]:
    """``count`` points of |F| = 1 at uniformly spaced angles.

    The sample nearest to each asymptotic direction is replaced by a ray marker
    (x = y = None), as is any sample where |F(cos t, sin t)| < 1e-12.
    """
    if count < 8:
        raise DomainError("need at least 8 samples")
    step = 2 * math.pi / count
    ray_idx = {round(a / step) % count for a in asymptote_angles(f)}
    out = []
    for k in range(count):
        theta = k * step
        r = polar_radius(f, theta)
        if k in ray_idx or math.isinf(r):
            out.append(CurvePoint(theta, None, None))
        else:
            out.append(CurvePoint(theta, r * math.cos(theta), r * math.sin(theta)))
    return out


def default_workers() -> int:
    """Thread cap from FORMAREA_THREADS, defaulting to 1."""
    try:
        return max(1, int(os.environ.get("FORMAREA_THREADS", "1")))
    except ValueError:
        return 1
