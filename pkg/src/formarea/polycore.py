"""Exact dense polynomials over the integers and the families built from them.

Coefficients are stored low degree first: ``IntPolynomial((c0, c1, ..., cm))``
is ``c0 + c1*x + ... + cm*x**m``.  Integer arithmetic is Python's bignum, so
nothing here ever rounds except :func:`s_form`, which expands a
trigonometric product in extended precision and then rounds under a guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .numtheory import DomainError, c_of_n, divisors, euler_phi, mobius, nu2

Number = Union[int, Fraction]


class PrecisionError(ArithmeticError):
    """Rounding a numerically expanded polynomial left a large residual."""


class UnsupportedFormError(ValueError):
    """The operation is not defined for this binary form."""


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = _strip(self.coeffs)
        for c in cs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"coefficients must be ints, got {c!r}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has no degree and raises."""
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.const(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self), len(other))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = IntPolynomial((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return to_string(self)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Divide out the content, normalising to a positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def compose_neg(self) -> "IntPolynomial":
        """p(-x)."""
        return IntPolynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def taylor_shift(self, a: int) -> "IntPolynomial":
        """p(x + a) for an integer shift."""
        cs = list(self.coeffs)
        m = len(cs)
        for i in range(m - 1):
            for j in range(m - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return IntPolynomial(tuple(cs))


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int) and not isinstance(p, bool):
        return IntPolynomial.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as an IntPolynomial")


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def sub(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p - q


def mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p * q


def divmod_exact(p: IntPolynomial, q: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Quotient and remainder over Z; fails if a leading division is inexact."""
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq, lq = q.degree, q.lead
    if len(rem) - 1 < dq:
        return IntPolynomial(), p
    quo = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq]
        if c == 0:
            continue
        if c % lq:
            raise ArithmeticError(f"{p} is not divisible by {q} over the integers")
        t = c // lq
        quo[k] = t
        for j, b in enumerate(q.coeffs):
            rem[k + j] -= t * b
    return IntPolynomial(tuple(quo)), IntPolynomial(tuple(rem))


def exact_div(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    quo, rem = divmod_exact(p, q)
    if not rem.is_zero:
        raise ArithmeticError(f"{q} does not divide {p}: remainder {rem}")
    return quo


def pseudo_remainder(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """lead(q)**(deg p - deg q + 1) * p  mod q, computed without fractions."""
    if q.is_zero:
        raise ZeroDivisionError("pseudo-remainder by zero")
    dq, lq = q.degree, q.lead
    if p.is_zero or p.degree < dq:
        return p
    r = p
    steps = p.degree - dq + 1
    while not r.is_zero and r.degree >= dq:
        shift = IntPolynomial((0,) * (r.degree - dq) + (r.lead,))
        r = r * lq - q * shift
        steps -= 1
    return r * lq**steps


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(tuple(k * c for k, c in enumerate(p.coeffs))[1:])


def l1_norm(p: IntPolynomial) -> int:
    """Sum of absolute values of the coefficients."""
    return sum(abs(c) for c in p.coeffs)


def gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z[x] via the primitive remainder sequence."""
    a, b = p.primitive(), q.primitive()
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    cont = math.gcd(p.content(), q.content())
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero and b.degree > 0:
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    g = a if b.is_zero else IntPolynomial((1,))
    return g.primitive() * cont


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Sylvester resultant by the subresultant remainder sequence.

    Convention: Res(p, q) = lead(p)**deg(q) * prod q(a) over the roots a of p,
    i.e. the Sylvester determinant, so Res(x - a, x - b) = a - b.
    """
    if p.is_zero or q.is_zero:
        raise DomainError("resultant of a zero polynomial")
    m, n = p.degree, q.degree
    if m < n:
        sign = -1 if (m * n) % 2 else 1
        return sign * _subresultant(q, p)
    return _subresultant(p, q)


def _subresultant(f: IntPolynomial, g: IntPolynomial) -> int:
    # Brown-Traub subresultant PRS; requires deg f >= deg g
    n, m = f.degree, g.degree
    if m == 0:
        return g.lead**n
    d = n - m
    h = pseudo_remainder(f, g) * (-1) ** (d + 1)
    lc = g.lead
    c = lc**d
    s_last = c
    c = -c
    while not h.is_zero:
        k = h.degree
        f, g, m, d = g, h, k, m - k
        b = -lc * c**d
        h = IntPolynomial(tuple(_exact_quo(a, b) for a in pseudo_remainder(f, g).coeffs))
        lc = g.lead
        if d > 1:
            c = _exact_quo((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        s_last = -c
    # g is now the last non-zero remainder; a non-constant one means a common factor
    return s_last if g.degree == 0 else 0


def _exact_quo(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"inexact division {a} / {b} in subresultant sequence")
    return q


def poly_discriminant(p: IntPolynomial) -> int:
    """(-1)**(m(m-1)/2) Res(p, p') / lead(p); degree-1 polynomials give 1."""
    m = p.degree
    if m < 1:
        raise DomainError("discriminant needs degree >= 1")
    if m == 1:
        return 1
    r = resultant(p, derivative(p))
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, p.lead)
    assert rem == 0
    return q


@dataclass(frozen=True)
class BinaryForm:
    """A binary form F(x, y) stored through F(x, 1) and its homogenizing degree."""

    poly: IntPolynomial
    form_degree: int

    def __post_init__(self):
        if self.form_degree < 1:
            raise DomainError("form degree must be at least 1")
        if self.poly.is_zero:
            raise DomainError("the zero form is not a binary form")
        if self.poly.degree > self.form_degree:
            raise DomainError(
                f"polynomial degree {self.poly.degree} exceeds form degree {self.form_degree}"
            )

    def homogeneous_coeffs(self) -> tuple[int, ...]:
        """Coefficients a_k of x**k y**(n-k), k = 0..n, including leading zeros."""
        return self.poly.coeffs + (0,) * (self.form_degree + 1 - len(self.poly))

    def __call__(self, x, y):
        n = self.form_degree
        return sum(c * x**k * y ** (n - k) for k, c in enumerate(self.homogeneous_coeffs()) if c)


def discriminant(f: BinaryForm) -> int:
    """Discriminant of a binary form.

    Normalised so that F = a * prod(x - r_i y) has D = a**(2n-2) prod_{i<j} (r_i - r_j)**2,
    which reproduces the tabulated values (D(T_3) = 432, D(Psi_7) = 49).

    When F(x, 1) has degree n - 1 the form carries a single factor y; writing
    F = y G, the pairwise products give D(F) = lead(G)**2 D(G).  A deficit of
    two or more means y**2 divides F and D(F) = 0.
    """
    n, p = f.form_degree, f.poly
    deficit = n - p.degree
    if deficit == 0:
        return poly_discriminant(p)
    if deficit == 1:
        if p.degree == 0:
            return 1
        return p.lead**2 * poly_discriminant(p)
    return 0


# ---------------------------------------------------------------------------
# families


@lru_cache(maxsize=512)
def cyclotomic(n: int) -> IntPolynomial:
    """n-th cyclotomic polynomial as prod_{d | n} (x**d - 1)**mu(n/d)."""
    if n < 1:
        raise DomainError(f"cyclotomic(n) needs n >= 1, got {n}")
    num, den = IntPolynomial((1,)), IntPolynomial((1,))
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 0:
            continue
        factor = IntPolynomial((-1,) + (0,) * (d - 1) + (1,))
        if mu == 1:
            num = num * factor
        else:
            den = den * factor
    return exact_div(num, den)


def cyclotomic_l1_norm(n: int) -> int:
    """Sum of |coefficients| of the n-th cyclotomic polynomial.

    Only the odd square-free kernel matters: Phi_n(x) = Phi_rad(n)(x**(n/rad(n)))
    and Phi_2m(x) = +-Phi_m(-x) for odd m.  The kernel polynomial is built as a
    truncated power series of prod (1 - x**d)**mu in int64, which is exact while
    the intermediate coefficients stay far below 2**63.
    """
    if n < 1:
        raise DomainError(f"cyclotomic(n) needs n >= 1, got {n}")
    import numpy as np

    from .numtheory import factorize

    k = 1
    for p, _ in factorize(n):
        if p != 2:
            k *= p
    if k == 1:
        return 2
    pos = [d for d in divisors(k) if mobius(k // d) == 1]
    neg = [d for d in divisors(k) if mobius(k // d) == -1]
    if len(pos) > 40:
        return l1_norm(cyclotomic(k))
    size = euler_phi(k) + 1
    a = np.zeros(size, dtype=np.int64)
    a[0] = 1
    for d in pos:
        if d < size:
            a[d:] = a[d:] - a[:-d].copy()
    for d in neg:
        if d < size:
            pad = (-size) % d
            b = np.concatenate([a, np.zeros(pad, dtype=np.int64)]).reshape(-1, d)
            a = np.cumsum(b, axis=0).reshape(-1)[:size]
    return int(np.abs(a).sum())


@lru_cache(maxsize=512)
def _palindromic_basis(m: int) -> tuple[IntPolynomial, ...]:
    # V_0 = 2, V_1 = z, V_k = z V_{k-1} - V_{k-2};  x**k + x**-k = V_k(x + 1/x)
    z = IntPolynomial.x()
    basis = [IntPolynomial((2,)), z]
    for _ in range(2, m + 1):
        basis.append(z * basis[-1] - basis[-2])
    return tuple(basis[: m + 1])


@lru_cache(maxsize=512)
def psi(n: int) -> IntPolynomial:
    """Minimal polynomial of 2 cos(2 pi/n)."""
    if n < 1:
        raise DomainError(f"psi(n) needs n >= 1, got {n}")
    if n == 1:
        return IntPolynomial((-2, 1))
    if n == 2:
        return IntPolynomial((2, 1))
    phi = cyclotomic(n)
    m = phi.degree // 2
    c = phi.coeffs
    if any(c[k] != c[2 * m - k] for k in range(m)):
        raise AssertionError(f"cyclotomic({n}) is not palindromic")
    V = _palindromic_basis(m)
    out = IntPolynomial((c[m],))
    for k in range(1, m + 1):
        out = out + V[k] * c[m + k]
    return out


def pi_form(n: int) -> IntPolynomial:
    """Minimal polynomial of 2 sin(2 pi/n)."""
    return psi(c_of_n(n))


@lru_cache(maxsize=512)
def chebyshev_t(n: int) -> IntPolynomial:
    if n < 0:
        raise DomainError("Chebyshev index must be >= 0")
    a, b = IntPolynomial((1,)), IntPolynomial((0, 1))
    if n == 0:
        return a
    two_x = IntPolynomial((0, 2))
    for _ in range(n - 1):
        a, b = b, two_x * b - a
    return b


@lru_cache(maxsize=512)
def chebyshev_u(n: int) -> IntPolynomial:
    if n < 0:
        raise DomainError("Chebyshev index must be >= 0")
    a, b = IntPolynomial((1,)), IntPolynomial((0, 2))
    if n == 0:
        return a
    two_x = IntPolynomial((0, 2))
    for _ in range(n - 1):
        a, b = b, two_x * b - a
    return b


S_FORM_GUARD = 1e-6


@lru_cache(maxsize=256)
def s_form(n: int) -> IntPolynomial:
    """S_n(x, 1) = 2**(n-1-nu2(n)) prod_{k=1}^{n} (sin(k pi/n) x - cos(k pi/n)).

    The k = n factor is the constant 1, so the result has degree n - 1.
    Coefficients come from an extended precision expansion rounded to the
    nearest integer; a residual above ``S_FORM_GUARD`` raises PrecisionError.
    """
    if n < 3:
        raise DomainError(f"s_form(n) needs n >= 3, got {n}")
    dps = 40 + n // 2
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(1)]
        for k in range(1, n + 1):
            s = mpmath.sinpi(mpmath.mpf(k) / n)
            c = -mpmath.cospi(mpmath.mpf(k) / n)
            nxt = [mpmath.mpf(0)] * (len(coeffs) + 1)
            for i, a in enumerate(coeffs):
                nxt[i] += a * c
                nxt[i + 1] += a * s
            coeffs = nxt
        scale = mpmath.mpf(2) ** (n - 1 - nu2(n))
        out = []
        for a in coeffs:
            v = a * scale
            r = int(mpmath.nint(v))
            if abs(v - r) >= S_FORM_GUARD:
                raise PrecisionError(f"s_form({n}): residual {float(abs(v - r)):.3g}")
            out.append(r)
    return IntPolynomial(tuple(out))


def binomial_form(a: int, b: int, n: int) -> BinaryForm:
    """a x**n + b y**n."""
    if a == 0 or b == 0:
        raise DomainError("binomial forms need non-zero a and b")
    if n < 3:
        raise DomainError(f"binomial forms need n >= 3, got {n}")
    return BinaryForm(IntPolynomial((b,) + (0,) * (n - 1) + (a,)), n)


# ---------------------------------------------------------------------------
# printing


def _sup(k: int) -> str:
    return f"^{k}" if k > 1 else ""


def to_string(p: IntPolynomial, var: str = "x") -> str:
    """Render like ``x^3 + x^2 - 2x - 1``."""
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + _sup(k)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def from_roots_numeric(roots: Sequence[float], lead: float = 1.0, dps: int = 50) -> list:
    """Expand lead * prod(x - r) in mpmath; test-side helper for root-product oracles."""
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(lead)]
        for r in roots:
            nxt = [mpmath.mpf(0)] * (len(coeffs) + 1)
            for i, a in enumerate(coeffs):
                nxt[i] -= a * r
                nxt[i + 1] += a
            coeffs = nxt
        return coeffs
