"""Closed-form areas, discriminant formulas and the two-sided area bounds.

Every bound is written out term by term, without simplification, so that a
transcription slip shows up as a failed sandwich instead of cancelling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .families import FamilyId, make, psi_id, t_id, u_id
from .numtheory import DomainError, divisor_count, euler_phi, factorize, nu2, omega
from .polycore import BinaryForm, discriminant
from .quadrature import AreaResult, QuadratureConfig, area_integral, integral_alpha
from .specialfn import PI, beta

B = beta
TIE_TOLERANCE = 1e-12


# ---------------------------------------------------------------- Psi family

def _psi_params(n: int, min_phi: int) -> tuple[int, int]:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    phi = euler_phi(n)
    if phi < min_phi:
        raise DomainError(f"needs phi(n) >= {min_phi}; phi({n}) = {phi}")
    return phi, divisor_count(n)


def psi_area_bounds(n: int) -> tuple[float, float]:
    """Lower and upper bounds on the area of Psi_n, for phi(n) >= 6."""
    phi, d = _psi_params(n, 6)
    log_n = math.log(n)
    lower = (16 / 3) * math.exp(-2 * d * log_n / phi)
    upper = (
        2 ** (4 / phi)
        * math.exp(2 * d**2 * log_n / phi)
        * (
            16 / 3
            + 2 ** (1 - 4 / phi) * B(1 / 2, 1 / 2 - 2 / phi)
            - 2 * PI
            + (2 / n * B(1 / n, 1 - 4 / phi) - 2)
            - (2 / n * B(3 / n, 1 - 4 / phi) - 2 / 3)
        )
    )
    return lower, upper


def psi_integral_bounds(n: int, alpha: float) -> tuple[float, float]:
    """Bounds on the integral of |Psi_n(x)|^-alpha, for phi(n) >= 4 and 2/phi(n) < alpha < 1."""
    phi, d = _psi_params(n, 4)
    if not 2 / phi < alpha < 1:
        raise DomainError(f"alpha must lie in (2/phi(n), 1) = ({2 / phi}, 1), got {alpha}")
    log_n = math.log(n)
    lower = (4 + 16 / (phi**2 * alpha**2 - 4)) * math.exp(-d * log_n / 2 * alpha)
    upper = (
        2**alpha
        * math.exp(d**2 * log_n / 2 * alpha)
        * (
            4
            + 2 ** (1 - alpha) * B((1 - alpha) / 2, 1 / 2)
            - 2 * PI
            + 2 / n * B((phi * alpha - 2) / (2 * n), 1 - alpha)
            - 2 / n * B((phi * alpha + 2) / (2 * n), 1 - alpha)
        )
    )
    return lower, upper


# ---------------------------------------------------------------- Chebyshev

def _check_cheb(n: int, alpha: Optional[float] = None) -> None:
    if n < 3:
        raise DomainError(f"needs n >= 3, got {n}")
    if alpha is not None and not 2 / n <= alpha < 1:
        raise DomainError(f"alpha must lie in [2/n, 1) = [{2 / n}, 1), got {alpha}")


def tn_area_bounds(n: int) -> tuple[float, float]:
    _check_cheb(n)
    lower = 8 / 3
    upper = 8 / 3 + (2 / 3) * (4 ** (1 / n) - 1) + B(1 / 2 - 1 / n, 1 / 2) - PI
    return lower, upper


def tn_integral_bounds(n: int, alpha: float) -> tuple[float, float]:
    _check_cheb(n, alpha)
    lower = 2 + 2 / (n**2 * alpha**2 - 1)
    upper = 2 + 2 ** (1 + alpha) / (n**2 * alpha**2 - 1) + B((1 - alpha) / 2, 1 / 2) - PI
    return lower, upper


def un_area_bounds(n: int) -> tuple[float, float]:
    _check_cheb(n)
    lower = 8 / 3 + (B(1 + 1 / n, 1 / 2) - 2) + (2 / 3) * ((n + 1) ** (-2 / n) - 1)
    upper = 8 / 3 + (B(1 + 1 / n, 1 / 2) - 2) + B(1 / 2 - 1 / n, 1 / 2) - PI
    return lower, upper


def un_integral_bounds(n: int, alpha: float) -> tuple[float, float]:
    _check_cheb(n, alpha)
    lower = B((2 + alpha) / 2, 1 / 2) + (2 / (n**2 * alpha**2 - 1)) * (n + 1) ** (-alpha)
    upper = B((2 + alpha) / 2, 1 / 2) + 2 / (n**2 * alpha**2 - 1) + B((1 - alpha) / 2, 1 / 2) - PI
    return lower, upper


# ---------------------------------------------------------------- closed forms

def binomial_area_closed(a: int, b: int, n: int) -> float:
    """Exact area of a x^n + b y^n."""
    if n < 3:
        raise DomainError(f"needs n >= 3, got {n}")
    if a == 0 or b == 0:
        raise DomainError("needs ab != 0")
    ab = a * b
    scale = abs(ab) ** (1 / n) if abs(ab) < 2**1000 else math.exp(math.log(abs(ab)) / n)
    if n % 2 == 1:
        return 1 / (n * scale) * (2 * B(1 / n, 1 - 2 / n) + B(1 / n, 1 / n))
    if ab > 0:
        return 2 / (n * scale) * B(1 / n, 1 / n)
    return 4 / (n * scale) * B(1 / n, 1 - 2 / n)


def s_area_closed(n: int) -> float:
    if n < 3:
        raise DomainError(f"needs n >= 3, got {n}")
    return 4 ** (nu2(n) / n) * B(1 / 2 - 1 / n, 1 / 2)


def q_star_closed(n: int) -> float:
    if n < 3:
        raise DomainError(f"needs n >= 3, got {n}")
    return 2 ** (1 - 2 / n) * n ** (1 / (n - 1)) * B(1 / 2 - 1 / n, 1 / 2)


def disc_tn_closed(n: int) -> int:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    return 2 ** ((n - 1) ** 2) * n**n


def disc_un_closed(n: int) -> int:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    if n == 1:
        return 1
    return 2 ** (n**2) * (n + 1) ** (n - 2)


def disc_psi_closed(n: int) -> int:
    """Discriminant of Psi_n from the field-discriminant formula."""
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    fac = factorize(n)
    odd = [(p, e) for p, e in fac if p != 2]
    k2 = nu2(n)
    if not odd:
        m = k2
        if m <= 2:
            raise DomainError(f"no discriminant case applies to n = {n}")
        return 2 ** ((m - 1) * 2 ** (m - 2) - 1)
    if len(odd) == 1 and k2 <= 1:
        p, m = odd[0]
        num = m * p**m - (m + 1) * p ** (m - 1) - 1
        assert num % 2 == 0
        return p ** (num // 2)
    if omega(n) > 1:
        half_phi = euler_phi(n) // 2
        out = 1
        for p, e in fac:
            ex = (Fraction(e) - Fraction(1, p - 1)) * half_phi
            if ex.denominator != 1:
                raise DomainError(f"non-integral exponent {ex} for p = {p} at n = {n}")
            out *= p ** int(ex)
        return out
    raise DomainError(f"no discriminant case applies to n = {n}")


# ---------------------------------------------------------------- invariants

def q_invariant(f: BinaryForm, area) -> float:
    """|D|^(1/(n(n-1))) * area; inf when the area diverges or D = 0."""
    if isinstance(area, AreaResult):
        area = area.value
    area = float(area)
    n = f.form_degree
    if n < 3 or math.isinf(area):
        return math.inf
    D = discriminant(f)
    if D == 0:
        return math.inf
    return math.exp(math.log(abs(D)) / (n * (n - 1))) * area


def q_comparison_bounds(n: int) -> tuple[float, float]:
    """Right-hand sides of the scaled Q(T_n) and Q(U_n) inequalities."""
    _check_cheb(n)
    t_side = 8 / 3 + (2 / 3) * (4 ** (1 / n) - 1) + B(1 / 2 - 1 / n, 1 / 2) - PI
    u_side = 8 / 3 + (B(1 + 1 / n, 1 / 2) - 2) + B(1 / 2 - 1 / n, 1 / 2) - PI
    return t_side, u_side


def q_upper_bounds(n: int) -> tuple[float, float]:
    """Upper bounds on Q(T_n) and Q(U_n) obtained by undoing the scaling."""
    t_side, u_side = q_comparison_bounds(n)
    qt = 2 ** ((n - 1) / n) * n ** (1 / (n - 1)) * t_side
    qu = 2 ** (n / (n - 1)) * (n + 1) ** ((n - 2) / (n * (n - 1))) * u_side
    return qt, qu


def fw_cyclotomic_envelope(n: int, epsilon: float) -> tuple[float, float]:
    if n < 3 or euler_phi(n) < 3:
        raise DomainError(f"needs n >= 3 with phi(n) >= 3, got n = {n}")
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    w = n ** (-1 + epsilon)
    return (2 - w) ** 2, (2 + w) ** 2


# ---------------------------------------------------------------- sandwich

class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class BoundReport:
    label: str
    n: int
    alpha: float
    lower: float
    upper: float
    computed: float
    abs_error: float = 0.0
    verdict: Verdict = field(init=False)

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        object.__setattr__(self, "verdict", _verdict(self.lower, self.computed, self.upper))

    @property
    def sandwich_ok(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def lower_margin(self) -> float:
        return self.computed - self.lower

    @property
    def upper_margin(self) -> float:
        return self.upper - self.computed


def _verdict(lower: float, computed: float, upper: float) -> Verdict:
    # every displayed inequality is strict
    if math.isinf(computed) or math.isnan(computed):
        return Verdict.FAIL
    if computed < lower - TIE_TOLERANCE or computed > upper + TIE_TOLERANCE:
        return Verdict.FAIL
    if abs(computed - lower) <= TIE_TOLERANCE or abs(computed - upper) <= TIE_TOLERANCE:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS


BOUNDED_FAMILIES = ("psi", "chebyshev-t", "chebyshev-u")

# looked up by name at call time so a patched bound is picked up
_AREA_BOUNDS = {"psi": "psi_area_bounds", "chebyshev-t": "tn_area_bounds", "chebyshev-u": "un_area_bounds"}
_INTEGRAL_BOUNDS = {
    "psi": "psi_integral_bounds",
    "chebyshev-t": "tn_integral_bounds",
    "chebyshev-u": "un_integral_bounds",
}
_IDS = {"psi": psi_id, "chebyshev-t": t_id, "chebyshev-u": u_id}


def sandwich(family: str, n: int, alpha: Optional[float] = None,
             cfg: QuadratureConfig = QuadratureConfig()) -> BoundReport:
    """Bounds and quadrature side by side.

    With ``alpha`` omitted the area bounds are used, otherwise the integral bounds.
    """
    if family not in _AREA_BOUNDS:
        raise DomainError(f"no bounds for family {family!r}; choose from {BOUNDED_FAMILIES}")
    f = make(_IDS[family](n))
    if alpha is None:
        lower, upper = globals()[_AREA_BOUNDS[family]](n)
        res = area_integral(f, cfg)
        a = 2 / f.form_degree
    else:
        lower, upper = globals()[_INTEGRAL_BOUNDS[family]](n, alpha)
        res = integral_alpha(f.poly, alpha, cfg)
        a = alpha
    return BoundReport(f"{family}({n})", n, a, lower, upper, res.value, res.abs_error_estimate)


def psi_sandwich_range(n_max: int) -> list[int]:
    return [n for n in range(3, n_max + 1) if euler_phi(n) >= 6]


def alpha_grid(family: str, n: int, count: int) -> list[float]:
    """``count`` admissible alphas spread evenly over the open validity interval."""
    if family == "psi":
        lo = 2 / euler_phi(n)
    else:
        lo = 2 / n
    step = (1 - lo) / (count + 1)
    return [lo + step * (k + 1) for k in range(count)]


def family_id_for(family: str, n: int) -> FamilyId:
    return _IDS[family](n)
