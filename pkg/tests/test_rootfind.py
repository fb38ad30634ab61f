import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formarea.numtheory import DomainError
from formarea.polycore import IntPolynomial, chebyshev_t, chebyshev_u, psi, s_form
from formarea.rootfind import Root, RootSet, isolate_real_roots, squarefree_decomposition, squarefree_part


def P(*coeffs_high_first):
    return IntPolynomial(tuple(reversed(coeffs_high_first)))


def from_linear_factors(factors):
    """prod (q x - p)^m for (p/q, m) pairs."""
    out = IntPolynomial((1,))
    for r, m in factors:
        out = out * IntPolynomial((-r.numerator, r.denominator)) ** m
    return out


def test_sqrt3():
    rs = isolate_real_roots(P(1, 0, -3))
    assert rs.locations == pytest.approx([-math.sqrt(3), math.sqrt(3)], rel=1e-15)
    assert rs.multiplicities == [1, 1]


def test_chebyshev_t4_roots():
    expected = sorted(math.cos((2 * k + 1) * math.pi / 8) for k in range(4))
    assert isolate_real_roots(chebyshev_t(4)).locations == pytest.approx(expected, rel=1e-14)


def test_psi7_roots():
    expected = sorted(2 * math.cos(2 * math.pi * k / 7) for k in (1, 2, 3))
    assert isolate_real_roots(psi(7)).locations == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("n", [5, 16, 40, 96])
def test_chebyshev_roots_high_degree(n):
    with mpmath.workdps(30):
        t = sorted(float(mpmath.cos((2 * k + 1) * mpmath.pi / (2 * n))) for k in range(n))
        u = sorted(float(mpmath.cos(k * mpmath.pi / (n + 1))) for k in range(1, n + 1))
    assert np.allclose(isolate_real_roots(chebyshev_t(n)).locations, t, rtol=1e-14, atol=1e-15)
    assert np.allclose(isolate_real_roots(chebyshev_u(n)).locations, u, rtol=1e-14, atol=1e-15)


@pytest.mark.parametrize("n", range(3, 20))
def test_s_form_roots_are_cotangents(n):
    # S_n(x, 1) vanishes at x = cot(k pi/n), k = 1..n-1
    expected = sorted(1 / math.tan(k * math.pi / n) for k in range(1, n))
    got = isolate_real_roots(s_form(n)).locations
    assert np.allclose(got, expected, rtol=1e-13, atol=1e-15)


def test_exact_roots_are_flagged():
    rs = isolate_real_roots(P(1, 0, -1) * P(2, -1))
    assert rs.locations == [-1.0, 0.5, 1.0]
    assert all(r.exact for r in rs)


def test_multiplicities():
    p = P(1, -1) ** 3 * P(1, 2) ** 2 * P(1, 0, 1)
    rs = isolate_real_roots(p)
    assert rs.locations == [-2.0, 1.0]
    assert rs.multiplicities == [2, 3]
    assert rs.total_multiplicity == 5


def test_no_real_roots():
    assert len(isolate_real_roots(P(1, 0, 0, 0, 1, 0, 1))) == 0


def test_zero_polynomial_rejected():
    with pytest.raises(DomainError):
        isolate_real_roots(IntPolynomial())


def test_rootset_validation():
    with pytest.raises(ValueError):
        RootSet((Root(1.0, 1, Fraction(1), Fraction(1)), Root(0.0, 1, Fraction(0), Fraction(0))))
    with pytest.raises(ValueError):
        RootSet((Root(1.0, 0, Fraction(1), Fraction(1)),))


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@given(st.lists(st.tuples(rationals, st.integers(1, 3)), min_size=1, max_size=5, unique_by=lambda t: t[0]),
       st.integers(0, 2))
@settings(max_examples=150, deadline=None)
def test_recovers_planted_rational_roots(factors, n_quadratics):
    p = from_linear_factors(factors)
    for k in range(n_quadratics):
        p = p * P(1, k, 3 + k)  # no real roots
    rs = isolate_real_roots(p)
    planted = sorted(factors)
    assert rs.locations == [float(r) for r, _ in planted]
    assert rs.multiplicities == [m for _, m in planted]
    for root, (r, _) in zip(rs, planted):
        assert root.lo <= r <= root.hi


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=9).filter(lambda cs: cs[-1] != 0))
@settings(max_examples=200, deadline=None)
def test_against_numpy_for_random_polynomials(cs):
    p = IntPolynomial(tuple(cs))
    rs = isolate_real_roots(p)
    assert rs.total_multiplicity <= p.degree
    for root in rs:
        assert root.lo <= root.hi
        # bracket really brackets a sign change of the square-free part
        q = squarefree_part(p)
        if not root.exact:
            assert q(root.lo) * q(root.hi) < 0
        else:
            assert p(root.lo) == 0
    sf = squarefree_part(p)
    expected = sorted(z.real for z in np.roots(list(reversed(sf.coeffs))) if abs(z.imag) < 1e-7)
    if len(expected) == len(rs):
        assert np.allclose(rs.locations, expected, rtol=1e-6, atol=1e-6)


@given(st.lists(st.tuples(st.lists(st.integers(-5, 5), min_size=2, max_size=4), st.integers(1, 3)),
                min_size=1, max_size=3))
@settings(max_examples=100, deadline=None)
def test_squarefree_decomposition_reconstructs(parts):
    p = IntPolynomial((1,))
    for cs, m in parts:
        f = IntPolynomial(tuple(cs))
        if f.is_zero:
            continue
        p = p * f**m
    if p.degree == 0:
        return
    dec = squarefree_decomposition(p)
    rebuilt = IntPolynomial((1,))
    for f, m in dec:
        rebuilt = rebuilt * f**m
    prim = p.primitive()
    assert rebuilt.primitive() == prim
    assert [m for _, m in dec] == sorted({m for _, m in dec})
