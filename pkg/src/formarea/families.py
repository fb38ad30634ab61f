"""Named families of binary forms with their homogenizing degrees."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from .numtheory import DomainError, c_of_n, euler_phi
from .polycore import (
    BinaryForm,
    binomial_form,
    chebyshev_t,
    chebyshev_u,
    cyclotomic,
    discriminant,
    psi,
    s_form,
)


class Family(str, Enum):
    PSI = "psi"
    PI = "pi"
    CHEBYSHEV_T = "chebyshev-t"
    CHEBYSHEV_U = "chebyshev-u"
    S = "s"
    CYCLOTOMIC = "cyclotomic"
    BINOMIAL = "binomial"


@dataclass(frozen=True)
class FamilyId:
    tag: Family
    n: int
    a: Optional[int] = None
    b: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "tag", Family(self.tag))
        if self.tag is Family.BINOMIAL:
            if self.a is None or self.b is None:
                raise DomainError("binomial forms need a and b")
        elif self.a is not None or self.b is not None:
            raise DomainError(f"{self.tag.value} takes no a, b parameters")

    def label(self) -> str:
        if self.tag is Family.BINOMIAL:
            return f"binomial({self.a},{self.b},{self.n})"
        return f"{self.tag.value}({self.n})"


_MIN_N = {
    Family.PSI: 1,
    Family.PI: 1,
    Family.CHEBYSHEV_T: 1,
    Family.CHEBYSHEV_U: 1,
    Family.S: 3,
    Family.CYCLOTOMIC: 1,
    Family.BINOMIAL: 3,
}


def _check(fid: FamilyId) -> None:
    if fid.n < _MIN_N[fid.tag]:
        raise DomainError(f"{fid.tag.value} needs n >= {_MIN_N[fid.tag]}, got {fid.n}")
    if fid.tag is Family.BINOMIAL and (fid.a == 0 or fid.b == 0):
        raise DomainError("binomial forms need a*b != 0")


@lru_cache(maxsize=1024)
def make(fid: FamilyId) -> BinaryForm:
    """The binary form of a family member.

    Psi(1) and Psi(2) are the linear forms x - 2y and x + 2y.
    """
    _check(fid)
    n = fid.n
    if fid.tag is Family.PSI:
        p = psi(n)
        return BinaryForm(p, p.degree)
    if fid.tag is Family.PI:
        p = psi(c_of_n(n))
        return BinaryForm(p, p.degree)
    if fid.tag is Family.CHEBYSHEV_T:
        return BinaryForm(chebyshev_t(n), n)
    if fid.tag is Family.CHEBYSHEV_U:
        return BinaryForm(chebyshev_u(n), n)
    if fid.tag is Family.S:
        return BinaryForm(s_form(n), n)
    if fid.tag is Family.CYCLOTOMIC:
        return BinaryForm(cyclotomic(n), euler_phi(n))
    return binomial_form(fid.a, fid.b, n)


def form_degree(fid: FamilyId) -> int:
    return make(fid).form_degree


def is_area_finite(fid: FamilyId) -> bool:
    f = make(fid)
    return f.form_degree >= 3 and discriminant(f) != 0


def psi_id(n: int) -> FamilyId:
    return FamilyId(Family.PSI, n)


def pi_id(n: int) -> FamilyId:
    return FamilyId(Family.PI, n)


def t_id(n: int) -> FamilyId:
    return FamilyId(Family.CHEBYSHEV_T, n)


def u_id(n: int) -> FamilyId:
    return FamilyId(Family.CHEBYSHEV_U, n)


def s_id(n: int) -> FamilyId:
    return FamilyId(Family.S, n)
