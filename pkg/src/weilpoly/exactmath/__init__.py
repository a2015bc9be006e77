"""Exact arithmetic over Q and Q(sqrt q), polynomials, Sturm sequences and
rigorous enclosures."""

from .enclosure import CEnclosure, Enclosure
from .poly import Poly, poly_gcd, squarefree_decompose
from .quadreal import NEGATIVE, POSITIVE, ZERO, QuadReal, quad_sign
from .radical import DEFAULT_CAP, DEFAULT_PREC, enclose, evaluate
from .sturm import (
    RootInterval,
    count_closed,
    count_real_roots_with_multiplicity,
    real_roots,
    sign_at_roots,
    sturm_chain,
    sturm_count,
)

__all__ = [
    "CEnclosure",
    "DEFAULT_CAP",
    "DEFAULT_PREC",
    "Enclosure",
    "NEGATIVE",
    "POSITIVE",
    "Poly",
    "QuadReal",
    "RootInterval",
    "ZERO",
    "count_closed",
    "count_real_roots_with_multiplicity",
    "enclose",
    "evaluate",
    "poly_gcd",
    "quad_sign",
    "real_roots",
    "sign_at_roots",
    "squarefree_decompose",
    "sturm_chain",
    "sturm_count",
]
