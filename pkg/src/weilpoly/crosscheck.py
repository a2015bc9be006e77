"""Brute-force oracle for W_q(g) and the comparison harness.

The oracle works only with the trace polynomial P (h(x) = x^g P(x + q/x))
and Sturm counts: h is q-Weil iff P has all g roots in [-2 sqrt q, 2 sqrt q].
Nothing here calls the closed-form predicates of ``realroots`` except
``predicate_route_member``, which exists to run those predicates against
the oracle in diagnostic mode.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Iterable

import numpy as np

from ._search import first_true, last_true
from .errors import BudgetExceeded
from .exactmath import Poly, QuadReal, count_closed, quad_sign, sign_at_roots
from .weil import (
    WeilCandidate,
    check_prime_power,
    coefficient_bounds,
    h_plus_minus,
    is_weil,
    trace_in_interval,
    trace_poly,
)

ORACLE_METHODS = ("trace", "box", "unpruned")


@dataclass(frozen=True)
class CoeffBox:
    """|a_i| <= binomial(2g, i) * ceil(q^{i/2})."""

    q: int
    g: int
    bounds: tuple[int, ...]

    @classmethod
    def of(cls, q: int, g: int) -> CoeffBox:
        return cls(q, g, coefficient_bounds(q, g))

    @property
    def size(self) -> int:
        return prod(2 * b + 1 for b in self.bounds)

    def __contains__(self, a) -> bool:
        return len(a) == self.g and all(abs(x) <= b for x, b in zip(a, self.bounds))

    def sample(self, rng: random.Random) -> tuple[int, ...]:
        return tuple(rng.randint(-b, b) for b in self.bounds)


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"candidate budget {self.limit} exceeded")


# the trace-space walk -------------------------------------------------------------------


def _level_poly(q: int, g: int, prefix: tuple[int, ...]) -> Poly:
    """P^{(g-k)} for the first k coefficients, with a_k set to 0.

    The first k+1 coefficients of P depend only on a_1..a_k, and a_k enters
    the constant term of P^{(g-k)} as (g-k)! * a_k.
    """
    k = len(prefix)
    P = trace_poly(WeilCandidate(q, g, prefix[:-1] + (0,) * (g - k + 1)))
    for _ in range(g - k):
        P = P.derivative()
    return P


def _float_roots(p: Poly) -> list[float]:
    if p.degree < 1:
        return []
    r = np.roots([float(c) for c in reversed(p.coeffs)])
    return sorted(float(x.real) for x in r)


class _Level:
    """All-roots-in-[-2 sqrt q, 2 sqrt q] conditions for F0 + w t, t an integer.

    With F' real-rooted inside the interval, F has all roots inside iff the
    critical values alternate in sign (largest critical point <= 0 side)
    and F is >= 0 at 2 sqrt q and of sign (-1)^k at -2 sqrt q.  Each
    condition is monotone in t, so the admissible t form an interval.
    """

    def __init__(self, F0: Poly, w: int, q: int):
        self.F0, self.w, self.k = F0, w, F0.degree
        self.dF = F0.derivative()
        self.s2 = 2 * QuadReal(0, 1, q)

    def _F(self, t: int) -> Poly:
        return self.F0 + self.w * t

    def _crit_signs(self, F: Poly) -> list[int]:
        if self.k < 2:
            return []
        out = []
        for r in sign_at_roots(F, self.dF):
            out.extend([r.sign] * r.mult)
        return out[::-1]  # descending critical points

    def lower_ok(self, t: int) -> bool:
        F = self._F(t)
        if quad_sign(F(self.s2)) < 0:
            return False
        if self.k % 2 == 0 and quad_sign(F(-self.s2)) < 0:
            return False
        return all(s >= 0 for s in self._crit_signs(F)[1::2])

    def upper_ok(self, t: int) -> bool:
        F = self._F(t)
        if self.k % 2 == 1 and quad_sign(F(-self.s2)) > 0:
            return False
        return all(s <= 0 for s in self._crit_signs(F)[0::2])

    def guesses(self) -> tuple[int, int]:
        s2 = 2.0 * float(self.s2)
        fl = [float(c) for c in self.F0.coeffs]

        def f(x):
            return sum(c * x**i for i, c in enumerate(fl))

        crit = _float_roots(self.dF)[::-1]
        lows = [-f(s2)] + [-f(x) for x in crit[1::2]]
        highs = [-f(x) for x in crit[0::2]]
        if self.k % 2 == 0:
            lows.append(-f(-s2))
        else:
            highs.append(-f(-s2))
        lo = max(lows) / self.w
        hi = min(highs) / self.w if highs else lo
        return int(np.ceil(lo)), int(np.floor(hi))

    def integer_range(self) -> range:
        glo, ghi = self.guesses()
        lo = first_true(self.lower_ok, glo)
        hi = last_true(self.upper_ok, max(ghi, lo))
        return range(lo, hi + 1)


def _trace_walk(q: int, g: int, budget: _Budget) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...]):
        k = len(prefix) + 1
        lvl = _Level(_level_poly(q, g, prefix + (0,)), factorial(g - k), q)
        for a_k in lvl.integer_range():
            budget.spend()
            nxt = prefix + (a_k,)
            if k == g:
                out.append(nxt)
            else:
                rec(nxt)

    rec(())
    return out


def _box_walk(q: int, g: int, budget: _Budget) -> list[tuple[int, ...]]:
    """Same Rolle cascade, but every a_k in the box is tested by a Sturm count."""
    box = coefficient_bounds(q, g)
    s2 = 2 * QuadReal(0, 1, q)
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...]):
        k = len(prefix) + 1
        F0 = _level_poly(q, g, prefix + (0,))
        w = factorial(g - k)
        for a_k in range(-box[k - 1], box[k - 1] + 1):
            budget.spend()
            F = F0 + w * a_k
            # endpoint signs are necessary and much cheaper than a Sturm count
            if quad_sign(F(s2)) < 0 or (-1) ** k * quad_sign(F(-s2)) < 0:
                continue
            if count_closed(F, -s2, s2) != k:
                continue
            nxt = prefix + (a_k,)
            if k == g:
                out.append(nxt)
            else:
                rec(nxt)

    rec(())
    return out


def _unpruned(q: int, g: int, budget: _Budget) -> list[tuple[int, ...]]:
    import itertools

    box = CoeffBox.of(q, g)
    budget.spend(box.size)
    ranges = [range(-b, b + 1) for b in box.bounds]
    return [a for a in itertools.product(*ranges) if is_weil(WeilCandidate(q, g, a), method="trace")]


def brute_force_enum(
    q: int, g: int, method: str = "trace", budget: int | None = None
) -> list[WeilCandidate]:
    """Every q-Weil candidate of genus g, sorted lexicographically."""
    check_prime_power(q)
    if g < 1:
        raise ValueError("g must be positive")
    if method not in ORACLE_METHODS:
        raise ValueError(f"method must be one of {ORACLE_METHODS}")
    b = _Budget(budget)
    walk = {"trace": _trace_walk, "box": _box_walk, "unpruned": _unpruned}[method]
    tuples = walk(q, g, b)
    cands = [WeilCandidate(q, g, a) for a in sorted(tuples)]
    # the walk is exact already; the final Sturm filter is a cheap second opinion
    return [c for c in cands if trace_in_interval(trace_poly(c), q)]


def oracle_real_root(c: WeilCandidate) -> bool:
    """h has a real root iff P vanishes at 2 sqrt q or -2 sqrt q."""
    P = trace_poly(c)
    s2 = 2 * QuadReal(0, 1, c.q)
    return quad_sign(P(s2)) == 0 or quad_sign(P(-s2)) == 0


# the predicate route (diagnostic) -------------------------------------------------------


def predicate_route_member(c: WeilCandidate, *, paper_literal: bool = False) -> bool:
    """Membership via the closed-form degree-g predicates applied to h+ and h-."""
    from .realroots import (
        deg2_real_nonneg,
        deg3_real_nonneg,
        deg4_real_nonneg,
        deg5_monic_real_nonneg,
    )

    hpm = h_plus_minus(c)
    for h in (hpm.hplus, hpm.hminus):
        co = list(reversed(h.coeffs))
        if c.g == 1:
            ok = quad_sign(co[1]) <= 0
        elif c.g == 2:
            ok = deg2_real_nonneg(*co, paper_literal=paper_literal)
        elif c.g == 3:
            ok = deg3_real_nonneg(*co, paper_literal=paper_literal)
        elif c.g == 4:
            ok = deg4_real_nonneg(*co, paper_literal=paper_literal)
        elif c.g == 5:
            ok = deg5_monic_real_nonneg(*co[1:])
        else:
            raise ValueError("predicate route covers 1 <= g <= 5")
        if not ok:
            return False
    return True


def predicate_route_enum(
    q: int, g: int, *, paper_literal: bool = False, budget: int | None = None
) -> list[WeilCandidate]:
    """Scan the whole coefficient box with the closed-form predicates."""
    import itertools

    box = CoeffBox.of(q, g)
    _Budget(budget).spend(box.size)
    ranges = [range(-b, b + 1) for b in box.bounds]
    out = []
    for a in itertools.product(*ranges):
        c = WeilCandidate(q, g, a)
        if predicate_route_member(c, paper_literal=paper_literal):
            out.append(c)
    return out


# comparison -----------------------------------------------------------------------------


@dataclass
class CompareReport:
    q: int
    g: int
    count_theorem: int
    count_oracle: int
    missing: list = field(default_factory=list)
    spurious: list = field(default_factory=list)
    realroot_count: int = 0
    realroot_mismatch: list = field(default_factory=list)
    safe_matches_theorem: bool | None = None
    elapsed: float = 0.0
    route: str = "theorem"

    @property
    def ok(self) -> bool:
        return not (self.missing or self.spurious or self.realroot_mismatch) and self.safe_matches_theorem is not False

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "g": self.g,
            "route": self.route,
            "count_theorem": self.count_theorem,
            "count_oracle": self.count_oracle,
            "missing": [list(a) for a in self.missing],
            "spurious": [list(a) for a in self.spurious],
            "realroot_count": self.realroot_count,
            "realroot_mismatch": [list(a) for a in self.realroot_mismatch],
            "safe_matches_theorem": self.safe_matches_theorem,
            "elapsed": round(self.elapsed, 3),
            "ok": self.ok,
        }


def _diff(found: Iterable[tuple], truth: Iterable[tuple]) -> tuple[list, list]:
    f, t = set(found), set(truth)
    return sorted(t - f), sorted(f - t)


def compare(
    q: int,
    g: int,
    mode: str = "theorem",
    *,
    oracle: str = "trace",
    budget: int | None = None,
    check_safe: bool = True,
    paper_literal: bool = False,
    jobs: int = 1,
) -> CompareReport:
    """Theorem-mode enumeration (or, with paper_literal, the predicate route
    with printed signs) against the brute-force oracle."""
    from .enumeration import EnumConfig, enumerate_weil

    t0 = time.perf_counter()
    truth = brute_force_enum(q, g, method=oracle, budget=budget)
    truth_a = [c.a for c in truth]
    truth_rr = {c.a: oracle_real_root(c) for c in truth}
    if paper_literal:
        found = [c.a for c in predicate_route_enum(q, g, paper_literal=True, budget=budget)]
        missing, spurious = _diff(found, truth_a)
        return CompareReport(
            q, g, len(found), len(truth), missing, spurious,
            sum(truth_rr.values()), [], None, time.perf_counter() - t0, "paper-literal",
        )
    members = enumerate_weil(EnumConfig(q, g, mode=mode, jobs=jobs))
    found = [m.a for m in members]
    missing, spurious = _diff(found, truth_a)
    rr_bad = sorted(m.a for m in members if m.a in truth_rr and m.real_root != truth_rr[m.a])
    safe_ok = None
    if check_safe and mode == "theorem":
        safe = enumerate_weil(EnumConfig(q, g, mode="safe", jobs=jobs))
        safe_ok = safe == members
    return CompareReport(
        q, g, len(found), len(truth), missing, spurious,
        sum(truth_rr.values()), rr_bad, safe_ok, time.perf_counter() - t0, mode,
    )


@dataclass
class SampleReport:
    q: int
    g: int
    samples: int
    prescreened: int
    members_hit: int
    disagreements: list
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _rolle_prescreen(q: int, g: int, a: tuple[int, ...]) -> bool:
    """Exact necessary condition for membership: P^{(g-k)} has all k roots in
    [-2 sqrt q, 2 sqrt q] for k = 1..g-1 (Rolle).  Levels 1 and 2 are a
    linear and a quadratic polynomial and are decided in integers."""
    P = trace_poly(WeilCandidate(q, g, a))
    c = P.coeffs[::-1]
    c1 = c[1] if g >= 1 else 0
    # level 1: g y + c1 vanishes inside, i.e. c1^2 <= 4 g^2 q
    if g >= 2 and c1 * c1 > 4 * g * g * q:
        return False
    if g >= 3:
        # level 2: A y^2 + B y + C with both roots in [-m, m], m^2 = 4q
        A, B, C = g * (g - 1) // 2, c1 * (g - 1), c[2]
        E = 4 * q * A + C  # F(m) + F(-m) = 2E, F(m) - F(-m) = 2 B m
        if B * B < 4 * A * C or B * B > 16 * A * A * q or E < 0 or E * E < 4 * q * B * B:
            return False
    s2 = 2 * QuadReal(0, 1, q)
    derivs = [P]
    for _ in range(g - 3):
        derivs.append(derivs[-1].derivative())
    # derivs[j] = P^{(j)} has degree g - j; check degrees 3..g-1 from the top
    for j in range(g - 3, 0, -1):
        if count_closed(derivs[j], -s2, s2) != g - j:
            return False
    return True


def sample_check(
    q: int,
    g: int,
    members: Iterable[tuple[int, ...]],
    n: int,
    *,
    seed: int = 0,
    prescreen: bool = True,
) -> SampleReport:
    """Uniform samples from the coefficient box: is_weil must agree with
    membership in the enumerated set.  With ``prescreen`` a sample that fails
    the exact Rolle condition counts as a non-member without calling
    is_weil (the condition is implied by is_weil).  Members of the set are
    always checked with is_weil in full."""
    t0 = time.perf_counter()
    rng = random.Random(seed)
    box = CoeffBox.of(q, g)
    mset = set(members)
    bad = []
    pre = hit = 0
    for _ in range(n):
        a = box.sample(rng)
        inside = a in mset
        hit += inside
        if prescreen and not _rolle_prescreen(q, g, a):
            pre += 1
            weil = False
        else:
            weil = is_weil(WeilCandidate(q, g, a))
        if weil != inside:
            bad.append(a)
    return SampleReport(q, g, n, pre, hit, bad, time.perf_counter() - t0)


__all__ = [
    "CoeffBox",
    "CompareReport",
    "ORACLE_METHODS",
    "SampleReport",
    "brute_force_enum",
    "compare",
    "oracle_real_root",
    "predicate_route_enum",
    "predicate_route_member",
    "sample_check",
]
