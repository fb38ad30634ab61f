"""Reference invariants for n = 3..9 and their recomputation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .families import FamilyId, make, pi_id, psi_id, s_id, t_id, u_id
from .numtheory import factorize
from .polycore import discriminant
from .quadrature import QuadratureConfig, area_integral
from .bounds import q_invariant

TABLE_N = range(3, 10)
TABLE_FAMILIES = ("psi", "pi", "s", "chebyshev-t", "chebyshev-u")
_CTORS = {"psi": psi_id, "pi": pi_id, "s": s_id, "chebyshev-t": t_id, "chebyshev-u": u_id}

# discriminants as {prime: exponent}; areas as printed (None means infinite)
_T1 = {
    3: [({}, None), ({2: 2, 3: 1}, None), ({2: 2, 3: 3}, "7.28585"), ({2: 4, 3: 3}, "5.78286"), ({2: 11}, "4.46217")],
    4: [({}, None), ({}, None), ({2: 2}, "10.4882"), ({2: 17}, "4.30008"), ({2: 16, 5: 2}, "3.50332")],
    5: [({5: 1}, None), ({2: 4, 5: 3}, "5.78302"), ({2: 12, 5: 5}, "4.55444"), ({2: 16, 5: 5}, "3.78568"),
        ({2: 28, 3: 3}, "3.19719")],
    6: [({}, None), ({2: 2, 3: 1}, None), ({2: 16, 3: 6}, "5.29992"), ({2: 31, 3: 6}, "3.52082"),
        ({2: 36, 7: 4}, "3.04985")],
    7: [({7: 2}, "8.31171"), ({2: 6, 7: 5}, "5.38644"), ({2: 30, 7: 7}, "3.99650"), ({2: 36, 7: 7}, "3.35841"),
        ({2: 64}, "2.96434")],
    8: [({2: 3}, None), ({2: 3}, None), ({2: 24}, "6.48467"), ({2: 73}, "3.24832"), ({2: 64, 3: 12}, "2.90894")],
    9: [({3: 4}, "7.64379"), ({2: 6, 3: 9}, "5.63543"), ({2: 56, 3: 18}, "3.75495"), ({2: 64, 3: 18}, "3.16867"),
        ({2: 88, 5: 7}, "2.87035")],
}

_T2 = {
    3: [None, None, "15.8997", "15.8997", "15.8997"],
    4: [None, None, "11.7726", "11.4798", "11.5438"],
    5: [None, "10.8953", "10.3228", "9.85622", "9.94897"],
    6: [None, None, "9.55526", "8.97702", "9.08227"],
    7: ["15.8997", "8.5577", "9.06881", "8.41412", "8.52393"],
    8: [None, None, "8.72772", "8.01814", "8.12848"],
    9: ["15.8997", "9.00056", "8.47265", "7.72218", "7.83097"],
}

# Printed areas that disagree with exact evaluations in their last digit(s).
# Each cubic with positive discriminant D has area 3 B(1/3, 1/3) D^(-1/6);
# S_4 has area 2 B(1/4, 1/2).  The matching Q entries agree with these values.
KNOWN_ERRATA = {
    ("s", 3): "7.28595",
    ("chebyshev-u", 3): "4.46172",
    ("s", 4): "10.4882",  # printed value is a truncation of 10.48823
    ("psi", 7): "8.31172",
    ("psi", 9): "7.64380",
}


def _from_exponents(exps: dict) -> int:
    out = 1
    for p, e in exps.items():
        out *= p**e
    return out


@dataclass(frozen=True)
class Table1Entry:
    n: int
    family: str
    discriminant: int
    area: Optional[str]

    @property
    def finite(self) -> bool:
        return self.area is not None


@dataclass(frozen=True)
class Table2Entry:
    n: int
    family: str
    q: Optional[str]


def table1_reference() -> list[Table1Entry]:
    return [
        Table1Entry(n, fam, _from_exponents(exps), area)
        for n in TABLE_N
        for fam, (exps, area) in zip(TABLE_FAMILIES, _T1[n])
    ]


def table2_reference() -> list[Table2Entry]:
    return [Table2Entry(n, fam, q) for n in TABLE_N for fam, q in zip(TABLE_FAMILIES, _T2[n])]


def family_id(family: str, n: int) -> FamilyId:
    return _CTORS[family](n)


def factored(m: int) -> str:
    """Prime factorization like ``2^4*3^3``; ``1`` for 1, a leading ``-`` for negatives."""
    if m == 0:
        return "0"
    sign = "-" if m < 0 else ""
    if abs(m) == 1:
        return sign + "1"
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(abs(m))]
    return sign + "*".join(parts)


def printed_digits(s: str) -> int:
    return len(s.split(".")[1]) if "." in s else 0


@dataclass(frozen=True)
class ComputedRow:
    n: int
    family: str
    discriminant: int
    area: float
    area_error: float
    q: float


def compute_row(family: str, n: int, cfg: QuadratureConfig = QuadratureConfig()) -> ComputedRow:
    f = make(family_id(family, n))
    res = area_integral(f, cfg)
    return ComputedRow(n, family, discriminant(f), res.value, res.abs_error_estimate, q_invariant(f, res))


def compute_tables(cfg: QuadratureConfig = QuadratureConfig(), workers: int = 1) -> list[ComputedRow]:
    keys = [(fam, n) for n in TABLE_N for fam in TABLE_FAMILIES]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda k: compute_row(*k, cfg), keys))
    return [compute_row(fam, n, cfg) for fam, n in keys]


def matches_printed(value: float, printed: Optional[str]) -> bool:
    """Agreement at the printed precision: rounding ``value`` reproduces ``printed``."""
    if printed is None:
        return math.isinf(value)
    if math.isinf(value):
        return False
    return f"{value:.{printed_digits(printed)}f}" == printed
