"""Real-rootedness via the critical values of f (exact and semi-exact checkers)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from ..errors import PreconditionViolated
from ..exactmath import (
    Enclosure,
    Poly,
    RootInterval,
    count_closed,
    count_real_roots_with_multiplicity,
    quad_sign,
    sign_at_roots,
)


class Mode(enum.Enum):
    REAL = "real"
    REAL_NONNEG = "real-nonneg"
    REAL_POS = "real-pos"


def hyperbolic_nonneg_exact(p: Poly, mode: Mode = Mode.REAL_NONNEG) -> bool:
    """Sturm-exact: does p have all roots real (and >= 0 / > 0 per mode)?"""
    if p.is_zero():
        raise ValueError("zero polynomial")
    n = p.degree
    if n == 0:
        return True
    if mode is Mode.REAL:
        return count_real_roots_with_multiplicity(p) == n
    if mode is Mode.REAL_NONNEG:
        return count_closed(p, 0, None) == n
    return count_real_roots_with_multiplicity(p, 0, None) == n


def _eval_enclosure(f: Poly, x: Enclosure) -> Enclosure:
    acc = Enclosure(0, 0, x.prec)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class DiamondInput:
    """f of degree K > 1 (positive leading coefficient) with the K-1 roots of
    f' listed in ascending order, i.e. (beta_{K-1}, ..., beta_1)."""

    f: Poly
    betas: tuple

    def __post_init__(self):
        if self.f.degree < 2:
            raise ValueError("degree must be at least 2")
        if len(self.betas) != self.f.degree - 1:
            raise ValueError("need exactly deg(f) - 1 critical points")


def _no_negative_roots(p: Poly, strict: bool) -> bool:
    total = count_real_roots_with_multiplicity(p)
    if strict:
        return count_real_roots_with_multiplicity(p, 0, None) == total
    return count_closed(p, 0, None) == total


def diamond_all_real(inp: DiamondInput, mode: Mode = Mode.REAL) -> bool:
    """Alternating-sign test on the critical values of f.

    With betas ascending, the largest is beta_1; f(beta_i) <= 0 for odd i
    and >= 0 for even i.  Enclosure betas whose sign is undecided are
    settled by exact sign determination at the roots of f'.
    """
    f = inp.f
    K = f.degree
    if quad_sign(f.lc) <= 0:
        raise ValueError("leading coefficient must be positive")
    df = f.derivative()
    if count_real_roots_with_multiplicity(df) != K - 1:
        raise PreconditionViolated("f' has a nonreal root")
    signs: list[int | None] = []
    for b in inp.betas:
        if isinstance(b, Enclosure):
            signs.append(_eval_enclosure(f, b).sign())
        else:
            signs.append(quad_sign(f(b)))
    if any(s is None for s in signs):
        exact = []
        for r in sign_at_roots(f, df):
            exact.extend([r.sign] * r.mult)
        signs = [s if s is not None else e for s, e in zip(signs, exact)]
    for j, s in enumerate(signs):
        i = K - 1 - j  # beta_i index, counted from the largest critical point
        if i % 2 == 1 and s > 0:
            return False
        if i % 2 == 0 and s < 0:
            return False
    if mode is Mode.REAL:
        return True
    strict = mode is Mode.REAL_POS
    smallest = inp.betas[0]
    if isinstance(smallest, Enclosure):
        s = smallest.sign()
        ok = _no_negative_roots(df, strict) if s is None else (s > 0 if strict else s >= 0)
    else:
        s = quad_sign(smallest)
        ok = s > 0 if strict else s >= 0
    if not ok:
        return False
    s0 = quad_sign(f(0)) * (-1) ** K
    return s0 > 0 if strict else s0 >= 0


@dataclass(frozen=True)
class CriticalPointProfile:
    """Non-inflection critical points alpha_k < ... < alpha_1 of f (stored
    descending) with the sign of f there and the order of f' at each."""

    K: int
    alphas: tuple[RootInterval, ...]
    all_critical: tuple[RootInterval, ...]

    @property
    def k(self) -> int:
        return len(self.alphas)

    def sign_sequence(self) -> list[int]:
        """f(alpha_0), f(alpha_1), ..., f(alpha_{k+1}) with the sentinels."""
        return [1] + [a.sign for a in self.alphas] + [(-1) ** self.K]


def critical_point_profile(f: Poly) -> CriticalPointProfile:
    df = f.derivative()
    crit = sign_at_roots(f, df)
    alphas = tuple(r for r in reversed(crit) if r.mult % 2 == 1)
    return CriticalPointProfile(f.degree, alphas, tuple(crit))


def sign_mult_all_real(f: Poly, mode: Mode = Mode.REAL) -> bool:
    """SIGN and MULT criterion on non-inflection critical points."""
    K = f.degree
    if K < 2 or quad_sign(f.lc) <= 0:
        raise ValueError("need degree > 1 and positive leading coefficient")
    df = f.derivative()
    if count_real_roots_with_multiplicity(df) != K - 1:
        raise PreconditionViolated("f' has a nonreal root")
    prof = critical_point_profile(f)
    seq = prof.sign_sequence()
    sign_ok = all(seq[i] * seq[i - 1] <= 0 for i in range(1, len(seq)))
    mult_ok = all(r.sign == 0 for r in prof.all_critical if r.mult > 1)
    if not (sign_ok and mult_ok):
        return False
    if mode is Mode.REAL:
        return True
    strict = mode is Mode.REAL_POS
    if not _no_negative_roots(df, strict):
        return False
    s0 = quad_sign(f(0)) * (-1) ** K
    return s0 > 0 if strict else s0 >= 0


def sorted_betas(values: Sequence) -> tuple:
    return tuple(sorted(values))
