"""Exact binary forms and the areas of their fundamental regions."""

from .bounds import (
    BoundReport,
    Verdict,
    binomial_area_closed,
    disc_psi_closed,
    disc_tn_closed,
    disc_un_closed,
    fw_cyclotomic_envelope,
    psi_area_bounds,
    psi_integral_bounds,
    q_comparison_bounds,
    q_invariant,
    q_star_closed,
    s_area_closed,
    sandwich,
    tn_area_bounds,
    tn_integral_bounds,
    un_area_bounds,
    un_integral_bounds,
)
from .families import Family, FamilyId, is_area_finite, make
from .numtheory import DomainError
from .polycore import BinaryForm, IntPolynomial, discriminant, resultant
from .quadrature import AccuracyError, AreaResult, QuadratureConfig, Status, area_integral, integral_alpha
from .rootfind import isolate_real_roots

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Verdict",
    "binomial_area_closed",
    "disc_psi_closed",
    "disc_tn_closed",
    "disc_un_closed",
    "fw_cyclotomic_envelope",
    "psi_area_bounds",
    "psi_integral_bounds",
    "q_comparison_bounds",
    "q_invariant",
    "q_star_closed",
    "s_area_closed",
    "sandwich",
    "tn_area_bounds",
    "tn_integral_bounds",
    "un_area_bounds",
    "un_integral_bounds",
    "Family",
    "FamilyId",
    "is_area_finite",
    "make",
    "DomainError",
    "BinaryForm",
    "IntPolynomial",
    "discriminant",
    "resultant",
    "AccuracyError",
    "AreaResult",
    "QuadratureConfig",
    "Status",
    "area_integral",
    "integral_alpha",
    "isolate_real_roots",
]
