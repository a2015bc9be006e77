"""Embedded invariant suites behind ``weilpoly selftest``.

Each suite returns None on success or a short failure message.  A suite
that runs out of precision is not a failure; once every suite has run,
PrecisionExhausted is re-raised if nothing failed outright.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, TextIO

from .errors import PrecisionExhausted
from .exactmath import Poly, count_closed
from .realroots import deg2_real_nonneg, deg3_real_nonneg, ferrari_roots, hyperbolic_nonneg_exact
from .weil import (
    WeilCandidate,
    expand,
    functional_eq_holds,
    h_plus_minus,
    is_weil,
    trace_poly,
)

# candidates whose g = 4 decision depends on sorting the theta set
THETA_REGRESSION = {
    (2, (-4, 10, -23, 40)): False,
    (2, (-5, 14, -31, 52)): False,
    (2, (-7, 25, -58, 96)): True,
    (2, (-6, 18, -36, 56)): True,
}


def _trace_identities(rng: random.Random, **_) -> str | None:
    for _ in range(200):
        q = rng.choice([2, 3, 4, 5, 7, 8, 9])
        g = rng.randint(1, 5)
        c = WeilCandidate(q, g, [rng.randint(-20, 20) for _ in range(g)])
        P = trace_poly(c)
        # x^g P(x + q/x) = sum_j p_j (x^2 + q)^j x^(g-j)
        h = Poly([0])
        for j, p in enumerate(P.coeffs):
            h = h + Poly([q, 0, 1]) ** j * Poly([0] * (g - j) + [1]) * p
        if tuple(h.coeffs[::-1]) != expand(c):
            return f"x^g P(x + q/x) != h for {c}"
        if not functional_eq_holds(expand(c), q, g):
            return f"functional equation fails for {c}"
        if h_plus_minus(c, "table") != h_plus_minus(c, "trace"):
            return f"h+/h- table and trace compositions differ for {c}"
    return None


def _branch_invariance(rng: random.Random, prec: int, cap: int, **_) -> str | None:
    done = 0
    while done < 100:
        roots = [Fraction(rng.randint(-12, 12)) for _ in range(4)]
        mean = sum(roots) / 4
        roots = sorted(r - mean for r in roots)
        Q = Poly.from_roots(roots)
        u2, u3, u4 = Q.coeffs[2] / 2, Q.coeffs[1] / 4, Q.coeffs[0]
        if u3 == 0:
            continue  # the resolvent square root vanishes; outside the formula
        done += 1
        for branch in range(3):
            fd = ferrari_roots(u2, u3, u4, prec=prec, cap=cap, c_branch=branch)
            if not fd.all_real:
                return f"four real roots missed for {roots}"
            if not all(g.contains(r) for g, r in zip(fd.gammas, roots)):
                return f"cube-root branch {branch} moves the roots of {roots}"
    return None


def _interlacing(rng: random.Random, **_) -> str | None:
    for _ in range(100):
        roots = sorted(rng.randint(-6, 6) for _ in range(5))
        f = Poly.from_roots(roots)
        df = f.derivative()
        distinct = sorted(set(roots))
        mult = {r: roots.count(r) for r in distinct}
        for r, s in zip(distinct, distinct[1:]):
            inside = count_closed(df, r, s) - (mult[r] - 1) - (mult[s] - 1)
            if inside != 1:
                return f"f' has {inside} roots strictly between {r} and {s} for roots {roots}"
    return None


def _theta_sorting(rng: random.Random, prec: int, cap: int, fault: str | None, **_) -> str | None:
    from .enumeration import theorem_member

    for (q, a), expected in THETA_REGRESSION.items():
        if is_weil(WeilCandidate(q, len(a), a)) != expected:
            return f"regression table entry {a} is stale"
        got = theorem_member(q, a, prec=prec, prec_cap=cap, sort_theta=fault != "unsorted-theta")
        if got != expected:
            return f"g=4 decision for q={q}, a={a} is {got}, expected {expected}"
    return None


def _predicates(rng: random.Random, **_) -> str | None:
    for _ in range(300):
        deg = rng.choice([2, 3])
        co = [1] + [rng.randint(-6, 6) for _ in range(deg)]
        p = Poly(co[::-1])
        pred = deg2_real_nonneg if deg == 2 else deg3_real_nonneg
        if pred(*co) != hyperbolic_nonneg_exact(p):
            return f"degree-{deg} predicate disagrees with Sturm on {co}"
    return None


def _oracle_equivalence(rng: random.Random, prec: int, cap: int, fault: str | None, **_) -> str | None:
    from .crosscheck import brute_force_enum
    from .enumeration import EnumConfig, enumerate_weil

    for q, g in [(2, 1), (2, 2), (4, 2), (3, 3)]:
        truth = [c.a for c in brute_force_enum(q, g)]
        got = [m.a for m in enumerate_weil(EnumConfig(q, g, prec=prec, prec_cap=cap))]
        if got != truth:
            return f"enumeration differs from the oracle at q={q}, g={g}"
    # g = 5: one outer slice against is_weil
    for m in enumerate_weil(EnumConfig(2, 5, prec=prec, prec_cap=cap, a1_range=(-14, -11))):
        if not is_weil(WeilCandidate(2, 5, m.a)):
            return f"g=5 enumeration emitted non-member {m.a}"
    return None


SUITES: dict[str, Callable[..., str | None]] = {
    "trace-identities": _trace_identities,
    "branch-invariance": _branch_invariance,
    "interlacing": _interlacing,
    "theta-sorting": _theta_sorting,
    "hyperbolicity-predicates": _predicates,
    "oracle-equivalence": _oracle_equivalence,
}


def run_selftest(
    *, prec: int, cap: int, fault: str | None = None, seed: int = 0, log: TextIO | None = None
) -> list[str]:
    """Run every suite; return the names (with reasons) of those that failed."""
    failures, exhausted = [], []
    for name, suite in SUITES.items():
        try:
            msg = suite(random.Random(seed), prec=prec, cap=cap, fault=fault)
            status = "ok" if msg is None else "FAIL"
        except PrecisionExhausted as exc:
            msg, status = None, f"precision exhausted ({exc})"
            exhausted.append(name)
        if log is not None:
            print(f"{name}: {status}", file=log)
        if msg is not None:
            failures.append(f"{name}: {msg}")
    if exhausted and not failures:
        raise PrecisionExhausted("suites " + ", ".join(exhausted))
    return failures
