"""Enumeration of W_q(g), g = 1..5, by the coefficient inequalities.

Each loop bound is turned into an exact integer interval:

* bounds of the form x + y sqrt(q) or c +- k D^{3/2} are floored/ceiled
  exactly in Q(sqrt q);
* bounds involving the sorted theta set or the Lambda values are first
  estimated from enclosures, then the estimate is corrected by exact
  monotone membership tests (Sturm counts), so the result never depends on
  the precision in use.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from math import ceil, floor
from typing import Iterator

from .errors import PrecisionExhausted
from .exactmath import (
    DEFAULT_CAP,
    DEFAULT_PREC,
    Enclosure,
    Poly,
    QuadReal,
    count_real_roots_with_multiplicity,
    sign_at_roots,
)
from .exactmath.quadreal import ceil_a_plus_b_sqrt, floor_a_plus_b_sqrt
from .exactmath.radical import Expr, enclose
from .realroots.lowdeg import depressed_quartic, ferrari_roots, theta_cubic, theta_position, theta_sorted
from ._search import first_true, last_true
from .weil import WeilCandidate, check_prime_power, is_weil

MODES = ("theorem", "safe")
FILTERS = ("all", "real-roots-only", "no-real-roots")


@dataclass(frozen=True)
class EnumConfig:
    q: int
    g: int
    mode: str = "theorem"
    filter: str = "all"
    prec: int = DEFAULT_PREC
    prec_cap: int = DEFAULT_CAP
    sort_theta: bool = True
    jobs: int = 1
    a1_range: tuple[int, int] | None = None
    pin: tuple[int, ...] | None = None  # fixed leading coefficients

    def __post_init__(self):
        check_prime_power(self.q)
        if not 1 <= self.g <= 5:
            raise ValueError("enumeration covers 1 <= g <= 5")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.filter not in FILTERS:
            raise ValueError(f"filter must be one of {FILTERS}")
        if self.prec < 2 or self.prec_cap < 2:
            raise ValueError("precision must be at least 2 bits")


@dataclass(frozen=True)
class Member:
    a: tuple[int, ...]
    real_root: bool


# integer intervals ------------------------------------------------------------------


@dataclass(frozen=True)
class IntRange:
    """Integers lo..hi; a *_boundary flag marks an endpoint that was not
    separated from an integer by the enclosure alone."""

    lo: int
    hi: int
    lo_boundary: bool = False
    hi_boundary: bool = False

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    @property
    def empty(self) -> bool:
        return self.hi < self.lo


def _enc_floor(e: Enclosure) -> tuple[int, bool]:
    lo, hi = floor(e.lower), floor(e.upper)
    return lo, lo != hi or e.upper == hi


def _enc_ceil(e: Enclosure) -> tuple[int, bool]:
    lo, hi = ceil(e.lower), ceil(e.upper)
    return hi, lo != hi or e.lower == lo


def integer_range(lo_expr, hi_expr, *, prec: int = DEFAULT_PREC, cap: int = DEFAULT_CAP) -> IntRange:
    """Smallest integer interval that provably contains every integer in
    [lo, hi].  Endpoints the enclosures cannot separate from an integer are
    kept (over-approximation) and flagged."""
    lo_e = enclose(lo_expr, prec=prec, cap=cap) if isinstance(lo_expr, Expr) else Enclosure.exact(lo_expr, prec)
    hi_e = enclose(hi_expr, prec=prec, cap=cap) if isinstance(hi_expr, Expr) else Enclosure.exact(hi_expr, prec)
    # any integer >= lo is >= ceil(lower bound of lo)
    lo = ceil(lo_e.lower)
    hi = floor(hi_e.upper)
    lo_flag = ceil(lo_e.upper) != lo or lo_e.lower == lo
    hi_flag = floor(hi_e.lower) != hi or hi_e.upper == hi
    return IntRange(lo, hi, lo_flag, hi_flag)


def _ceil_q(x) -> int:
    """Exact ceiling of a rational or QuadReal."""
    if isinstance(x, QuadReal):
        return ceil(x)
    return ceil(Fraction(x))


def _floor_q(x) -> int:
    if isinstance(x, QuadReal):
        return floor(x)
    return floor(Fraction(x))


def _radical_range(c, k, D) -> tuple[int, int]:
    """Integers n with |n - c| <= k D^{3/2} (k >= 0, D >= 0 rational)."""
    if D < 0:
        return 1, 0
    return ceil_a_plus_b_sqrt(c, -k * D, D), floor_a_plus_b_sqrt(c, k * D, D)


def _settled_ceil(e: Enclosure) -> tuple[int, bool]:
    """ceil of the enclosed value, and whether the enclosure decides it."""
    c = ceil(e.lower)
    return c, c == ceil(e.upper)


def _settled_floor(e: Enclosure) -> tuple[int, bool]:
    f = floor(e.upper)
    return f, f == floor(e.lower)


# theta and Lambda bounds --------------------------------------------------------------


def theta_int_range(G, m: int, u2, u3, cfg: EnumConfig) -> tuple[int, int]:
    """Integers n with G + m theta_1 <= n <= G + m theta_2."""
    delta = u3 * u3 + Fraction(4, 27) * u2**3
    if delta > 0:
        return 1, 0
    res = theta_sorted(u2, u3, prec=cfg.prec, cap=cfg.prec_cap, refine=False)
    if not cfg.sort_theta:
        # fault injection: thetas in construction order, decided by midpoints
        t1, t2 = res.construction_order[0], res.construction_order[1]
        return ceil(G + m * t1.midpoint), floor(G + m * t2.midpoint)
    cubic = res.cubic
    e_lo = res.thetas[0] * m + G
    e_hi = res.thetas[1] * m + G
    lo, lo_sure = _settled_ceil(e_lo)
    hi, hi_sure = _settled_floor(e_hi)
    if lo_sure and hi_sure:
        return lo, hi

    def above_t1(n):
        return theta_position(cubic, Fraction(n - G) / m)[0]

    def below_t2(n):
        return theta_position(cubic, Fraction(n - G) / m)[1]

    if not lo_sure:
        lo = first_true(above_t1, lo)
    if not hi_sure:
        hi = last_true(below_t2, hi)
    return lo, hi


def _h_poly(u2, u3, u4) -> Poly:
    """H(x) = -x^5 - (10/3) u2 x^3 - 10 u3 x^2 - 5 u4 x."""
    return Poly([0, -5 * u4, -10 * u3, -Fraction(10, 3) * u2, 0, -1])


def _signs_at_gammas(F: Poly, Q: Poly) -> list[int]:
    out = []
    for r in sign_at_roots(F, Q):
        out.extend([r.sign] * r.mult)
    return out


def lambda_int_range(u2, u3, u4, A, cfg: EnumConfig) -> tuple[int, int]:
    """Integers n with Lambda_1 + A <= n <= Lambda_2 + A."""
    Q = depressed_quartic(u2, u3, u4)
    H = _h_poly(u2, u3, u4)
    A = Fraction(A)
    try:
        fd = ferrari_roots(u2, u3, u4, prec=cfg.prec, cap=cfg.prec_cap)
    except PrecisionExhausted:
        # no usable enclosures at this cap: locate both ends by exact search alone
        if count_real_roots_with_multiplicity(Q) != 4:
            return 1, 0
        lo = hi = round(A)
        lo_sure = hi_sure = False
    else:
        if not fd.all_real:
            return 1, 0
        vals = []
        for g_enc in fd.gammas:
            acc = Enclosure(0, 0, g_enc.prec)
            for c in reversed(H.coeffs):
                acc = acc * g_enc + c
            vals.append(acc)
        # max/min of enclosures, taken endpoint-wise
        e_lo = Enclosure(max(vals[0].lo, vals[2].lo), max(vals[0].hi, vals[2].hi), vals[0].prec) + A
        e_hi = Enclosure(min(vals[1].lo, vals[3].lo), min(vals[1].hi, vals[3].hi), vals[1].prec) + A
        lo, lo_sure = _settled_ceil(e_lo)
        hi, hi_sure = _settled_floor(e_hi)
        if lo_sure and hi_sure:
            return lo, hi

    def lower_ok(n):
        s = _signs_at_gammas(H + (A - n), Q)
        return s[0] <= 0 and s[2] <= 0

    def upper_ok(n):
        s = _signs_at_gammas(H + (A - n), Q)
        return s[1] >= 0 and s[3] >= 0

    if not lo_sure:
        lo = first_true(lower_ok, lo)
    if not hi_sure:
        hi = last_true(upper_ok, hi)
    return lo, hi


# the enumerators ----------------------------------------------------------------------


def _sq(q: int) -> QuadReal:
    return QuadReal(0, 1, q)


def _linear_range(centre, half_width) -> tuple[int, int, object, object]:
    """Integers in [centre - half_width, centre + half_width] (QuadReals)."""
    lo = centre - half_width
    hi = centre + half_width
    return _ceil_q(lo), _floor_q(hi), lo, hi


def _outer_range(q: int, k: int, cfg: EnumConfig) -> range:
    """|a_1| <= k sqrt(q), i.e. a_1^2 <= k^2 q; clipped to cfg.a1_range."""
    from math import isqrt

    b = isqrt(k * k * q)
    lo, hi = -b, b
    if cfg.a1_range is not None:
        lo, hi = max(lo, cfg.a1_range[0]), min(hi, cfg.a1_range[1])
    return range(lo, hi + 1)


def _span(cfg: EnumConfig, i: int, lo: int, hi: int) -> range:
    """lo..hi, narrowed to the pinned value of a_{i+1} if there is one."""
    if cfg.pin is not None and i < len(cfg.pin):
        v = cfg.pin[i]
        return range(v, v + 1) if lo <= v <= hi else range(0)
    return range(lo, hi + 1)


def _gen_g1(cfg: EnumConfig) -> Iterator[Member]:
    q = cfg.q
    for a in _outer_range(q, 2, cfg):
        yield Member((a,), a * a == 4 * q)


def _gen_g2(cfg: EnumConfig) -> Iterator[Member]:
    q = cfg.q
    s = _sq(q)
    for a in _outer_range(q, 4, cfg):
        lo_b = -2 * q + 2 * s * abs(a)
        hi_b = Fraction(a * a, 4) + 2 * q
        for b in _span(cfg, 1, _ceil_q(lo_b), _floor_q(hi_b)):
            yield Member((a, b), a * a == 16 * q or lo_b == b)


def _gen_g3(cfg: EnumConfig) -> Iterator[Member]:
    q = cfg.q
    s = _sq(q)
    for a1 in _outer_range(q, 6, cfg):
        eq_a = a1 * a1 == 36 * q
        lo2 = 4 * s * abs(a1) - 9 * q
        hi2 = Fraction(a1 * a1, 3) + 3 * q
        for a2 in _span(cfg, 1, _ceil_q(lo2), _floor_q(hi2)):
            eq_b = lo2 == a2
            # (c): |a3 - c| <= (2/27) D^{3/2}
            c = -Fraction(2, 27) * a1**3 + Fraction(a1 * a2, 3) + q * a1
            D = Fraction(a1 * a1 - 3 * a2 + 9 * q)
            lo_c, hi_c = _radical_range(c, Fraction(2, 27), D)
            # (d): |a3 + 2 q a1| <= 2 sqrt(q) (a2 + q)
            lo_d, hi_d, dlo, dhi = _linear_range(QuadReal(-2 * q * a1, 0, q), 2 * s * (a2 + q))
            for a3 in _span(cfg, 2, max(lo_c, lo_d), min(hi_c, hi_d)):
                rr = eq_a or eq_b or dlo == a3 or dhi == a3
                yield Member((a1, a2, a3), rr)


def _gen_g4(cfg: EnumConfig) -> Iterator[Member]:
    q = cfg.q
    s = _sq(q)
    for a1 in _outer_range(q, 8, cfg):
        eq_a = a1 * a1 == 64 * q
        lo2 = 6 * s * abs(a1) - 20 * q
        hi2 = Fraction(3 * a1 * a1, 8) + 4 * q
        for a2 in _span(cfg, 1, _ceil_q(lo2), _floor_q(hi2)):
            eq_b = lo2 == a2
            # (c): |a3 + 9 q a1| <= 4 sqrt(q) a2 + 16 q sqrt(q)
            lo_c, hi_c, clo, chi = _linear_range(QuadReal(-9 * q * a1, 0, q), s * (4 * a2 + 16 * q))
            # (d): |a3 - c| <= (1/216) (9 a1^2 - 24 a2 + 96 q)^{3/2}
            c = Fraction(a1 * a2, 2) - Fraction(a1**3, 8) + q * a1
            D = Fraction(9 * a1 * a1 - 24 * a2 + 96 * q)
            lo_d, hi_d = _radical_range(c, Fraction(1, 216), D)
            for a3 in _span(cfg, 2, max(lo_c, lo_d), min(hi_c, hi_d)):
                eq_c = clo == a3 or chi == a3
                # (e): a4 >= 2 sqrt(q) |q a1 + a3| - 2 q a2 - 2 q^2
                lo_e = 2 * s * abs(q * a1 + a3) - 2 * q * a2 - 2 * q * q
                # (f): G + theta_1 <= a4 <= G + theta_2
                u2 = -Fraction(3 * a1 * a1, 16) + Fraction(a2, 2) - 2 * q
                u3 = -Fraction(a1**3, 32) + Fraction(a1 * a2, 8) + Fraction(a1 * q, 4) - Fraction(a3, 4)
                G = (
                    Fraction(3 * a1**4, 256)
                    - Fraction(a1 * a1 * a2, 16)
                    - Fraction(q * a1 * a1, 2)
                    + Fraction(a1 * a3, 4)
                    + 2 * q * a2
                    - 2 * q * q
                )
                lo_f, hi_f = theta_int_range(G, 1, u2, u3, cfg)
                for a4 in _span(cfg, 3, max(_ceil_q(lo_e), lo_f), hi_f):
                    rr = eq_a or eq_b or eq_c or lo_e == a4
                    yield Member((a1, a2, a3, a4), rr)


def quintic_data(q: int, a1: int, a2: int, a3: int, a4: int):
    """u2, u3, u4 and the constant A of the degree-10 criterion."""
    F = Fraction
    u2 = -F(3 * a1 * a1, 25) + F(3 * a2, 10) - F(3 * q, 2)
    u3 = F(2 * a1**3, 125) - F(3 * a1 * a2, 50) - F(q * a1, 10) + F(a3, 10)
    u4 = (
        -F(3 * a1**4, 625)
        + F(3 * a1 * a1 * a2, 125)
        + F(q * a1 * a1, 5)
        - F(2 * a1 * a3, 25)
        - F(3 * q * a2, 5)
        + F(a4, 5)
        + q * q
    )
    A = (
        -F(4 * a1**5, 3125)
        + F(a1**3 * (a2 + 15 * q), 125)
        - F(a1 * a1 * a3, 25)
        - F(a1 * (3 * a2 * q - a4 + 5 * q * q), 5)
        + 2 * q * a3
    )
    return u2, u3, u4, A


def _gen_g5(cfg: EnumConfig) -> Iterator[Member]:
    q = cfg.q
    s = _sq(q)
    F = Fraction
    for a1 in _outer_range(q, 10, cfg):
        eq_a = a1 * a1 == 100 * q
        lo2 = 8 * s * abs(a1) - 35 * q
        hi2 = F(2 * a1 * a1, 5) + 5 * q
        for a2 in _span(cfg, 1, _ceil_q(lo2), _floor_q(hi2)):
            eq_b = lo2 == a2
            # (c): |a3 - c| <= (1/50) (4 a1^2 + 50 q - 10 a2)^{3/2}
            c = -F(4 * a1**3, 25) + F(3 * a1 * a2, 5) + q * a1
            D = F(4 * a1 * a1 + 50 * q - 10 * a2)
            lo_c, hi_c = _radical_range(c, F(1, 50), D)
            # (d): |a3 + 20 q a1| <= 6 sqrt(q) a2 + 50 q sqrt(q)
            lo_d, hi_d, dlo, dhi = _linear_range(QuadReal(-20 * q * a1, 0, q), s * (6 * a2 + 50 * q))
            u2 = -F(3 * a1 * a1, 25) + F(3 * a2, 10) - F(3 * q, 2)
            for a3 in _span(cfg, 2, max(lo_c, lo_d), min(hi_c, hi_d)):
                eq_d = dlo == a3 or dhi == a3
                # (e): G + 5 theta_1 <= a4 <= G + 5 theta_2
                u3 = F(2 * a1**3, 125) - F(3 * a1 * a2, 50) - F(q * a1, 10) + F(a3, 10)
                G = (
                    F(3 * a1**4, 125)
                    - F(3 * a1 * a1 * a2, 25)
                    - q * a1 * a1
                    + F(2 * a1 * a3, 5)
                    + 3 * q * a2
                    - 5 * q * q
                )
                lo_e, hi_e = theta_int_range(G, 5, u2, u3, cfg)
                # (f): a4 >= 4 sqrt(q) |4 q a1 + a3| - 9 q a2 - 25 q^2
                lo_f = 4 * s * abs(4 * q * a1 + a3) - 9 * q * a2 - 25 * q * q
                for a4 in _span(cfg, 3, max(lo_e, _ceil_q(lo_f)), hi_e):
                    eq_f = lo_f == a4
                    # (g): |a5 + 2 q a3 + 2 q^2 a1| <= 2 sqrt(q) (a4 + q a2 + q^2)
                    lo_g, hi_g, glo, ghi = _linear_range(
                        QuadReal(-2 * q * a3 - 2 * q * q * a1, 0, q), 2 * s * (a4 + q * a2 + q * q)
                    )
                    if lo_g > hi_g:
                        continue
                    # (h): Lambda_1 + A <= a5 <= Lambda_2 + A
                    _, u3_, u4, A = quintic_data(q, a1, a2, a3, a4)
                    lo_h, hi_h = lambda_int_range(u2, u3_, u4, A, cfg)
                    for a5 in _span(cfg, 4, max(lo_g, lo_h), min(hi_g, hi_h)):
                        rr = eq_a or eq_b or eq_d or eq_f or glo == a5 or ghi == a5
                        yield Member((a1, a2, a3, a4, a5), rr)


_GENERATORS = {1: _gen_g1, 2: _gen_g2, 3: _gen_g3, 4: _gen_g4, 5: _gen_g5}


def iter_members(cfg: EnumConfig) -> Iterator[Member]:
    """Stream members in lexicographic order (single process)."""
    for m in _GENERATORS[cfg.g](cfg):
        if cfg.mode == "safe" and not is_weil(WeilCandidate(cfg.q, cfg.g, m.a)):
            continue
        if cfg.filter == "real-roots-only" and not m.real_root:
            continue
        if cfg.filter == "no-real-roots" and m.real_root:
            continue
        yield m


def _worker(cfg: EnumConfig) -> list[Member]:
    return list(iter_members(cfg))


def _partition(cfg: EnumConfig) -> list[EnumConfig]:
    from math import isqrt

    b = isqrt(4 * cfg.g * cfg.g * cfg.q)
    lo, hi = -b, b
    if cfg.a1_range is not None:
        lo, hi = max(lo, cfg.a1_range[0]), min(hi, cfg.a1_range[1])
    n = max(1, min(cfg.jobs * 4, hi - lo + 1))
    size = -(-(hi - lo + 1) // n)
    parts = []
    start = lo
    while start <= hi:
        end = min(hi, start + size - 1)
        parts.append(replace(cfg, a1_range=(start, end), jobs=1))
        start = end + 1
    return parts


def enumerate_weil(cfg: EnumConfig) -> list[Member]:
    """All members for cfg, sorted lexicographically by (a_1, ..., a_g)."""
    if cfg.jobs <= 1:
        return list(iter_members(cfg))
    parts = _partition(cfg)
    with ProcessPoolExecutor(max_workers=min(cfg.jobs, os.cpu_count() or 1)) as pool:
        chunks = list(pool.map(_worker, parts))
    return [m for chunk in chunks for m in chunk]


def _candidates(q: int, g: int, **kw) -> Iterator[WeilCandidate]:
    for m in iter_members(EnumConfig(q, g, **kw)):
        yield WeilCandidate(q, g, m.a)


def enum_g1(q: int, **kw) -> Iterator[WeilCandidate]:
    return _candidates(q, 1, **kw)


def enum_g2(q: int, **kw) -> Iterator[WeilCandidate]:
    return _candidates(q, 2, **kw)


def enum_g3(q: int, **kw) -> Iterator[WeilCandidate]:
    return _candidates(q, 3, **kw)


def enum_g4(q: int, **kw) -> Iterator[WeilCandidate]:
    return _candidates(q, 4, **kw)


def enum_g5(q: int, **kw) -> Iterator[WeilCandidate]:
    return _candidates(q, 5, **kw)


def theorem_member(q: int, a, **kw) -> bool:
    """Membership of a single candidate decided by the inequalities alone.
    Keyword arguments are passed on to EnumConfig."""
    a = tuple(a)
    g = len(a)
    cfg = EnumConfig(q, g, a1_range=(a[0], a[0]), pin=a, **kw)
    return any(m.a == a for m in _GENERATORS[g](cfg))


__all__ = [
    "EnumConfig",
    "IntRange",
    "Member",
    "PrecisionExhausted",
    "enum_g1",
    "enum_g2",
    "enum_g3",
    "enum_g4",
    "enum_g5",
    "enumerate_weil",
    "integer_range",
    "iter_members",
    "lambda_int_range",
    "quintic_data",
    "theorem_member",
    "theta_int_range",
]
