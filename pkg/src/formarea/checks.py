"""Self-verification suite behind ``formarea verify``.

Each check compares library output with an independent route to the same
number (a closed form, an exact identity, or a reference table) and reports
PASS/FAIL with a one-line detail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath

from . import bounds as bd
from .families import Family, FamilyId, make, pi_id, t_id, u_id
from .numtheory import DomainError, c_of_n, divisor_count, divisors, euler_phi
from .polycore import (
    BinaryForm,
    IntPolynomial,
    binomial_form,
    chebyshev_t,
    chebyshev_u,
    cyclotomic,
    cyclotomic_l1_norm,
    discriminant,
    psi,
    s_form,
)
from .quadrature import QuadratureConfig, area_integral
from .specialfn import beta, beta_trig_quadrature, gamma
from .tables import KNOWN_ERRATA, compute_row, matches_printed, table1_reference, table2_reference

GROUPS = ("tables", "discriminants", "oracles", "sandwich", "identities", "limits", "special", "qcompare")


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    passed: bool
    detail: str = ""
    # documented as unattainable; failing is reported but does not fail the run
    expected_failure: bool = False

    @property
    def status(self) -> str:
        if self.expected_failure:
            return "XPASS" if self.passed else "XFAIL"
        return "PASS" if self.passed else "FAIL"

    @property
    def failed(self) -> bool:
        return self.passed == self.expected_failure


def _result(group, name, passed, detail="", expected_failure=False):
    return CheckResult(group, name, bool(passed), detail, expected_failure)


# ---------------------------------------------------------------- groups

def check_tables(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    rows = {}
    for ref in table1_reference():
        row = rows[(ref.family, ref.n)] = compute_row(ref.family, ref.n, cfg)
        name = f"table1 {ref.family}({ref.n})"
        out.append(_result("tables", name + " D", row.discriminant == ref.discriminant,
                           f"{row.discriminant} vs {ref.discriminant}"))
        erratum = KNOWN_ERRATA.get((ref.family, ref.n))
        if erratum is None:
            out.append(_result("tables", name + " A", matches_printed(row.area, ref.area),
                               f"{row.area:.12g} vs {ref.area}"))
        else:
            # a misprint only counts as expected if the corrected value is reproduced
            ok_corrected = matches_printed(row.area, erratum)
            out.append(_result("tables", name + " A", abs(row.area - float(ref.area)) < 1e-5,
                               f"{row.area:.12g} vs printed {ref.area}, corrected {erratum}",
                               expected_failure=ok_corrected))
    for ref in table2_reference():
        row = rows[(ref.family, ref.n)]
        out.append(_result("tables", f"table2 {ref.family}({ref.n}) Q", matches_printed(row.q, ref.q),
                           f"{row.q:.12g} vs {ref.q}"))
    return out


def check_discriminants(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    for n in range(3, 13):
        dt = discriminant(BinaryForm(chebyshev_t(n), n))
        du = discriminant(BinaryForm(chebyshev_u(n), n))
        out.append(_result("discriminants", f"D(T_{n})", dt == bd.disc_tn_closed(n)))
        out.append(_result("discriminants", f"D(U_{n})", du == bd.disc_un_closed(n)))
    for n in range(1, 101):
        try:
            closed = bd.disc_psi_closed(n)
        except DomainError:
            continue
        p = psi(n)
        out.append(_result("discriminants", f"D(Psi_{n})", closed == discriminant(BinaryForm(p, p.degree))))
    return out


BINOMIAL_CASES = [
    (1, 1, 3), (1, 1, 4), (1, -1, 4), (2, 3, 5), (-2, 3, 5), (1, 1, 6), (1, -1, 6), (3, 5, 7),
    (1, 2, 8), (-1, 2, 8), (5, 7, 9), (1, 1, 10), (1, -3, 10), (2, 2, 11), (1, 1, 12), (-4, 1, 12),
    (1, 6, 13), (7, -1, 15), (1, 1, 16), (3, -2, 20),
]


def check_oracles(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    for a, b, n in BINOMIAL_CASES:
        q = area_integral(binomial_form(a, b, n), cfg).value
        c = bd.binomial_area_closed(a, b, n)
        rel = abs(q - c) / c
        out.append(_result("oracles", f"binomial({a},{b},{n})", rel < 1e-8, f"rel {rel:.2e}"))
    for n in range(3, 13):
        q = area_integral(make(FamilyId(Family.S, n)), cfg).value
        c = bd.s_area_closed(n)
        rel = abs(q - c) / c
        out.append(_result("oracles", f"S_{n}", rel < 1e-8, f"rel {rel:.2e}"))
    q3 = bd.q_star_closed(3)
    out.append(_result("oracles", "Q*(3)", abs(q3 - 3 * beta(1 / 3, 1 / 3)) < 1e-10 and abs(q3 - 15.8997) < 1e-4,
                       f"{q3:.12g}"))
    return out


def sandwich_cases() -> list[tuple[str, int, object]]:
    cases = [("psi", n, None) for n in bd.psi_sandwich_range(60)]
    cases += [(fam, n, None) for fam in ("chebyshev-t", "chebyshev-u") for n in range(3, 41)]
    grid = {"psi": (5, 7, 9, 11, 15, 16, 20, 24), "chebyshev-t": (3, 4, 6, 10, 17), "chebyshev-u": (3, 5, 9, 12, 20)}
    for fam, ns in grid.items():
        for n in ns:
            cases += [(fam, n, a) for a in bd.alpha_grid(fam, n, 4)]
    return cases


def check_sandwich(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    for fam, n, alpha in sandwich_cases():
        r = bd.sandwich(fam, n, alpha, cfg)
        tag = f"{fam}({n})" + ("" if alpha is None else f" alpha={alpha:.6g}")
        out.append(_result("sandwich", tag, r.sandwich_ok,
                           f"{r.lower:.6g} < {r.computed:.9g} < {r.upper:.6g}: {r.verdict.value}"))
    return out


def lehmer_residuals(n: int, thetas) -> float:
    """Largest relative residual of the 2cos / 2cosh modulus identities for Psi_n."""
    p, cyc = psi(n), cyclotomic(n)
    half = euler_phi(n) / 2
    worst = 0.0
    with mpmath.workdps(40):
        def ev(poly, z):
            return mpmath.polyval(list(reversed(poly.coeffs)), z)

        for th in thetas:
            th = mpmath.mpf(th)
            for s in (1, -1):
                lhs = abs(ev(p, s * 2 * mpmath.cos(th)))
                rhs = abs(ev(cyc, s * mpmath.expjpi(th / mpmath.pi)))
                worst = max(worst, float(abs(lhs - rhs) / max(rhs, mpmath.mpf(1e-30))))
                lhs = abs(ev(p, s * 2 * mpmath.cosh(th)))
                rhs = mpmath.exp(half * th) * abs(ev(cyc, s * mpmath.exp(-th)))
                worst = max(worst, float(abs(lhs - rhs) / rhs))
    return worst


def check_identities(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    bad = []
    for n in range(1, 201):
        prod = IntPolynomial((1,))
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        if prod != IntPolynomial((-1,) + (0,) * (n - 1) + (1,)):
            bad.append(n)
    out.append(_result("identities", "prod Phi_d = x^n - 1, n <= 200", not bad, f"failures {bad}"))

    thetas = [0.05 + 0.37 * k for k in range(8)]
    worst = max(lehmer_residuals(n, thetas) for n in range(3, 41))
    out.append(_result("identities", "Psi/Phi modulus identities, 3 <= n <= 40", worst < 1e-10, f"max rel {worst:.2e}"))

    bad = [n for n in range(1, 65) if make(pi_id(n)).poly != psi(c_of_n(n))]
    out.append(_result("identities", "Pi_n = Psi_c(n), n <= 64", not bad, f"failures {bad}"))

    norm_fails, prod_fails = [], []
    logs = {}
    for n in range(2, 10_001):
        L = cyclotomic_l1_norm(n)
        logs[n] = math.log(L)
        d = divisor_count(n)
        if logs[n] > d / 2 * math.log(n) + 1e-12:
            norm_fails.append(n)
    for n in range(2, 10_001):
        d = divisor_count(n)
        lhs = math.fsum(logs[m] for m in divisors(n) if m != 1)
        if lhs > d**2 * math.log(n) / 2 + 1e-9:
            prod_fails.append(n)
    out.append(_result("identities", "L(Phi_n) <= n^(d(n)/2), n <= 10^4", not norm_fails, f"failures {norm_fails[:5]}"))
    out.append(_result("identities", "prod L(Phi_m) <= exp(d^2 log n / 2), n <= 10^4", not prod_fails,
                       f"failures {prod_fails[:5]}"))

    bad = [n for n in range(3, 33) if s_form(n).content() != 1]
    out.append(_result("identities", "content(S_n) = 1, n <= 32", not bad, f"failures {bad}"))
    return out


LIMIT_NS = (12, 24, 48, 96)


def _decreasing(xs) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


def limit_series(cfg: QuadratureConfig) -> dict[str, list[float]]:
    return {
        "T": [abs(area_integral(make(t_id(n)), cfg).value - 8 / 3) for n in LIMIT_NS],
        "U": [abs(area_integral(make(u_id(n)), cfg).value - 8 / 3) for n in LIMIT_NS],
        "binomial": [abs(bd.binomial_area_closed(1, 1, n) - 4) for n in LIMIT_NS],
        "cyclotomic": [abs(area_integral(make(FamilyId(Family.CYCLOTOMIC, n)), cfg).value - 4) for n in LIMIT_NS],
    }


def q_t96(cfg: QuadratureConfig) -> float:
    n = 96
    area = area_integral(make(t_id(n)), cfg).value
    return math.exp(math.log(bd.disc_tn_closed(n)) / (n * (n - 1))) * area


def check_limits(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    for name, series in limit_series(cfg).items():
        out.append(_result("limits", f"|{name} - limit| decreasing over n = {LIMIT_NS}", _decreasing(series),
                           ", ".join(f"{v:.3e}" for v in series)))
    q = q_t96(cfg)
    # A(T_96) > 8/3 and D^(1/(n(n-1))) = 2.083 force Q(T_96) > 5.55; the limit is approached too slowly
    floor = math.exp(math.log(bd.disc_tn_closed(96)) / (96 * 95)) * bd.tn_area_bounds(96)[0]
    out.append(_result("limits", "|Q(T_96) - 16/3| < 0.1", abs(q - 16 / 3) < 0.1,
                       f"Q(T_96) = {q:.9g}, provable floor {floor:.6g}",
                       expected_failure=floor > 16 / 3 + 0.1))
    return out


def beta_grid() -> list[float]:
    return [0.1 + 0.25 * k for k in range(20)]


def check_special(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    worst = 0.0
    for k in range(1, 400):
        x = 0.05 * k
        worst = max(worst, abs(gamma(x + 1) - x * gamma(x)) / (x * gamma(x)))
    out.append(_result("special", "Gamma(x + 1) = x Gamma(x)", worst < 1e-12, f"max rel {worst:.2e}"))
    out.append(_result("special", "B(1/2, 1/2) = pi", abs(beta(0.5, 0.5) - math.pi) < 1e-12))
    out.append(_result("special", "B(1, 1/2) = 2", abs(beta(1.0, 0.5) - 2.0) < 1e-12))
    worst = 0.0
    for x in beta_grid():
        for y in beta_grid():
            b = beta(x, y)
            worst = max(worst, abs(beta_trig_quadrature(x, y) - b) / b)
    out.append(_result("special", "beta vs trigonometric quadrature, 20x20 grid", worst < 1e-9,
                       f"max rel {worst:.2e}"))
    return out


def check_qcompare(cfg: QuadratureConfig) -> list[CheckResult]:
    out = []
    for n in range(3, 10):
        q = {}
        for fam, fid in (("S", FamilyId(Family.S, n)), ("T", t_id(n)), ("U", u_id(n))):
            f = make(fid)
            q[fam] = bd.q_invariant(f, area_integral(f, cfg))
        ok = q["T"] <= q["S"] + 1e-9 and q["U"] <= q["S"] + 1e-9
        out.append(_result("qcompare", f"Q(T_{n}), Q(U_{n}) <= Q(S_{n})", ok,
                           f"{q['T']:.9g}, {q['U']:.9g} vs {q['S']:.9g}"))
    for n in range(10, 41):
        qt, qu = bd.q_upper_bounds(n)
        qs = bd.q_star_closed(n)
        out.append(_result("qcompare", f"bound route n = {n}", qt < qs and qu < qs,
                           f"{qt:.9g}, {qu:.9g} vs {qs:.9g}"))
    return out


_RUNNERS: dict[str, Callable[[QuadratureConfig], list[CheckResult]]] = {
    "tables": check_tables,
    "discriminants": check_discriminants,
    "oracles": check_oracles,
    "sandwich": check_sandwich,
    "identities": check_identities,
    "limits": check_limits,
    "special": check_special,
    "qcompare": check_qcompare,
}


def run_checks(only=None, cfg: QuadratureConfig = QuadratureConfig()) -> list[CheckResult]:
    groups = GROUPS if not only else tuple(only)
    unknown = [g for g in groups if g not in _RUNNERS]
    if unknown:
        raise DomainError(f"unknown check group(s) {unknown}; choose from {GROUPS}")
    out = []
    for g in groups:
        out.extend(_RUNNERS[g](cfg))
    return out
