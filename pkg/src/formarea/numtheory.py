"""Arithmetic functions on machine-range naturals.

Everything here factors by trial division, which is plenty for the
n <= 10**9 range the command line accepts.
"""

from __future__ import annotations

import math
from functools import lru_cache

EULER_GAMMA = 0.57721566490153286061


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


def _check_positive(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    return n


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with increasing p."""
    _check_positive(n)
    out = []
    if n % 2 == 0:
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        out.append((2, e))
    p = 3
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for _, e in factorize(n))


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def nu2(n: int) -> int:
    """2-adic valuation of ``n``."""
    _check_positive(n)
    return (n & -n).bit_length() - 1


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n))


def c_of_n(n: int) -> int:
    """Index c with 2 sin(2 pi/n) conjugate to 2 cos(2 pi/c).

    The five-way case split on n mod 16; for n >= 5 it coincides with the
    reduced denominator of (n - 4)/(4n), see :func:`c_of_n_by_gcd`.
    """
    _check_positive(n)
    if n % 2 == 1:
        return 4 * n
    if n % 4 == 2:
        return 2 * n
    if n % 8 == 0:
        return n
    if n % 16 == 12:
        return n // 2
    return n // 4  # n = 4 (mod 16)


def c_of_n_by_gcd(n: int) -> int:
    """Reduced denominator of (n - 4)/(4n); undefined at n = 4."""
    _check_positive(n)
    num, den = n - 4, 4 * n
    if num == 0:
        raise DomainError("(n - 4)/(4n) vanishes at n = 4; denominator undefined")
    return den // math.gcd(num, den)


def _loglog(n: int) -> float:
    if n <= 2:
        raise DomainError(f"log log n requires n > 2, got {n}")
    return math.log(math.log(n))


def d_upper_bound(n: int) -> float:
    """Nicolas-Robin bound n**(1.067/log log n) on the divisor count."""
    return n ** (1.067 / _loglog(n))


def phi_lower_bound(n: int) -> float:
    """Rosser-Schoenfeld lower bound on Euler's totient."""
    ll = _loglog(n)
    return n / (math.exp(EULER_GAMMA) * ll + 3.0 / ll)
