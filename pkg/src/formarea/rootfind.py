"""Real root isolation over Z[x].

Roots are isolated exactly by Descartes' rule of signs with bisection
(Collins-Akritas) on each square-free factor, then narrowed by exact bisection
at dyadic points until the interval is below double precision.  No floating
point enters until the final conversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numtheory import DomainError
from .polycore import IntPolynomial, derivative, exact_div, gcd


@dataclass(frozen=True)
class Root:
    location: float
    multiplicity: int
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Root, ...]

    def __post_init__(self):
        locs = [r.location for r in self.roots]
        if any(b <= a for a, b in zip(locs, locs[1:])):
            raise ValueError("root locations must be strictly increasing")
        if any(r.multiplicity < 1 for r in self.roots):
            raise ValueError("multiplicities must be positive")

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def locations(self) -> list[float]:
        return [r.location for r in self.roots]

    @property
    def multiplicities(self) -> list[int]:
        return [r.multiplicity for r in self.roots]

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)


def squarefree_decomposition(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Musser's gcd chain: primitive square-free factors and their multiplicities."""
    if p.is_zero:
        raise DomainError("square-free decomposition of the zero polynomial")
    a = p.primitive()
    if a.degree == 0:
        return []
    b = gcd(a, derivative(a)).primitive()
    c = exact_div(a, b).primitive()
    out = []
    k = 1
    while c.degree > 0:
        y = gcd(b, c).primitive()
        f = exact_div(c, y).primitive()
        if f.degree > 0:
            out.append((f, k))
        b = exact_div(b, y).primitive()
        c = y
        k += 1
    return out


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    a = p.primitive()
    if a.degree == 0:
        return a
    return exact_div(a, gcd(a, derivative(a))).primitive()


def _sign_variations(coeffs) -> int:
    count, last = 0, 0
    for c in coeffs:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def _shift1(cs: list[int]) -> list[int]:
    # q(x + 1)
    cs = list(cs)
    m = len(cs)
    for i in range(m - 1):
        for j in range(m - 2, i - 1, -1):
            cs[j] += cs[j + 1]
    return cs


def _descartes_bound(cs: list[int]) -> int:
    # sign variations of (x + 1)**m q(1/(x + 1)) count roots of q in (0, 1)
    return _sign_variations(_shift1(cs[::-1]))


def _positive_roots(p: IntPolynomial, rel_bits: int = 60) -> list[tuple[Fraction, Fraction]]:
    """Narrow intervals around the positive roots of a square-free p with p(0) != 0."""
    cs = list(p.coeffs)
    lead = abs(cs[-1])
    # Cauchy bound, rounded up to a power of two
    bound = 1 + max(abs(c) for c in cs[:-1]) // lead + 1
    B = 1 << max(bound - 1, 1).bit_length()
    q = [c * B**k for k, c in enumerate(cs)]  # q(x) = p(B x), roots now in (0, 1)
    out = []
    # (local coefficients, k, c): the local variable y in (0, 1) maps to B (c + y) / 2^k
    stack = [(q, 0, 0)]
    while stack:
        qc, k, c = stack.pop()
        v = _descartes_bound(qc)
        if v == 0:
            continue
        if v == 1:
            ylo, yhi = _refine_local(qc, c, rel_bits)
            scale = Fraction(B, 2**k)
            out.append((scale * (c + ylo), scale * (c + yhi)))
            continue
        n = len(qc) - 1
        left = [a << (n - i) for i, a in enumerate(qc)]  # 2^n q(x/2)
        right = _shift1(left)
        if right[0] == 0:
            mid = Fraction(B * (2 * c + 1), 2 ** (k + 1))
            out.append((mid, mid))
            # drop the midpoint root from both halves so no endpoint is a root
            right = right[1:]
            left = _deflate_one(left)
        stack.append((right, k + 1, 2 * c + 1))
        stack.append((left, k + 1, 2 * c))
    return sorted(out)


def _deflate_one(cs: list[int]) -> list[int]:
    # divide by (x - 1); exact because cs has the root 1
    m = len(cs) - 1
    out = [0] * m
    acc = cs[m]
    for k in range(m - 1, -1, -1):
        out[k] = acc
        acc = cs[k] + acc
    assert acc == 0
    return out


def _sign_at(p: IntPolynomial, x: Fraction) -> int:
    """Exact sign of p at a rational point."""
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    # sum c_k num^k den^(m-k)
    for c in reversed(p.coeffs):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _refine_local(qc: list[int], c: int, rel_bits: int) -> tuple[Fraction, Fraction]:
    # the outer coordinate is proportional to c + y; stop once the bracket is
    # below 2**-rel_bits of it
    poly = IntPolynomial(tuple(qc))
    lo, hi = Fraction(0), Fraction(1)
    s_lo = _sign_at(poly, lo)
    assert s_lo != 0 and _sign_at(poly, hi) != 0
    while (hi - lo) * 2**rel_bits > c + lo:
        mid = (lo + hi) / 2
        s = _sign_at(poly, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _real_roots_squarefree(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    out = []
    if p.coeffs[0] == 0:
        out.append((Fraction(0), Fraction(0)))
        p = IntPolynomial(p.coeffs[1:])
    if p.degree == 0:
        return out
    out.extend(_positive_roots(p))
    for lo, hi in _positive_roots(p.compose_neg()):
        out.append((-hi, -lo))
    return out


@lru_cache(maxsize=1024)
def isolate_real_roots(p: IntPolynomial) -> RootSet:
    """All real roots of p with multiplicities, located to about 1e-16 relative."""
    if p.is_zero:
        raise DomainError("the zero polynomial has no isolated roots")
    found = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in _real_roots_squarefree(factor):
            found.append(Root(float((lo + hi) / 2), mult, lo, hi))
    found.sort(key=lambda r: r.location)
    return RootSet(tuple(found))
