"""Sturm sequences, exact real-root counting and isolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from ..errors import NotSquarefree
from .poly import Poly, poly_gcd, squarefree_decompose
from .quadreal import QuadReal, quad_sign

NEG_INF = None
POS_INF = None


def _is_int_poly(p: Poly) -> bool:
    return all(isinstance(c, int) for c in p.coeffs)


def _primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g > 1:
        return [c // g for c in coeffs]
    return coeffs


def _int_neg_prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of -rem(a, b) up to a positive factor (integer coefficients)."""
    rem = list(a)
    db = len(b) - 1
    lc = b[-1]
    steps = 0
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [x * lc for x in rem]
        for j, bc in enumerate(b):
            rem[shift + j] -= c * bc
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
        steps += 1
    if not rem:
        return []
    # multiplied by lc**steps overall; undo its sign and negate
    if lc < 0 and steps % 2 == 1:
        rem = [-x for x in rem]
    rem = [-x for x in rem]
    return _primitive(rem)


def sturm_chain(p: Poly) -> list[Poly]:
    """Negated-remainder sequence of p, each term scaled by a positive constant."""
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    if _is_int_poly(p):
        chain = [list(p.coeffs)]
        d = p.derivative()
        if d.is_zero():
            return [p]
        chain.append(_primitive(list(d.coeffs)))
        while len(chain[-1]) > 1:
            r = _int_neg_prem(chain[-2], chain[-1])
            if not r:
                break
            chain.append(r)
        return [Poly(c) for c in chain]
    chain = [p]
    d = p.derivative()
    if d.is_zero():
        return chain
    chain.append(d)
    while chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        lc = r.lc
        if isinstance(lc, QuadReal) and lc.b:
            r = r.scale(abs(lc).inverse())
        else:
            r = r.monic() if lc > 0 else r.scale(Fraction(-1) / lc)
        chain.append(r)
    return chain


def _sign_at(p: Poly, x) -> int:
    if x is None:
        raise ValueError("use _sign_at_inf for infinite endpoints")
    return quad_sign(p(x))


def _sign_at_inf(p: Poly, positive: bool) -> int:
    s = quad_sign(p.lc)
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def _variations(signs: list[int]) -> int:
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def variations(chain: list[Poly], x, at_inf: int = 0) -> int:
    """Sign variations of a chain at x; at_inf=-1/+1 selects -inf/+inf."""
    if at_inf:
        return _variations([_sign_at_inf(c, at_inf > 0) for c in chain])
    return _variations([_sign_at(c, x) for c in chain])


def is_squarefree(p: Poly) -> bool:
    return p.degree <= 0 or poly_gcd(p, p.derivative()).degree == 0


def _count_with_chain(chain: list[Poly], lo, hi) -> int:
    v_lo = variations(chain, lo, -1 if lo is None else 0)
    v_hi = variations(chain, hi, 1 if hi is None else 0)
    return v_lo - v_hi


def sturm_count(p: Poly, lo=None, hi=None, *, check: bool = True) -> int:
    """Number of distinct real roots of squarefree p in (lo, hi].

    ``None`` endpoints stand for -inf (lo) and +inf (hi).
    """
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("sturm_count requires lo < hi")
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p)
    if check and chain[-1].degree > 0:
        raise NotSquarefree(f"gcd(p, p') has degree {chain[-1].degree}")
    return _count_with_chain(chain, lo, hi)


def count_real_roots_with_multiplicity(p: Poly, lo=None, hi=None) -> int:
    """Real roots of p in (lo, hi] counted with multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    total = 0
    for factor, m in squarefree_decompose(p):
        total += m * sturm_count(factor, lo, hi, check=False)
    return total


def count_closed(p: Poly, lo, hi) -> int:
    """Real roots of p in the closed interval [lo, hi], with multiplicity."""
    total = 0
    for factor, m in squarefree_decompose(p):
        n = sturm_count(factor, lo, hi, check=False)
        if lo is not None and quad_sign(factor(lo)) == 0:
            n += 1
        total += m * n
    return total


# root isolation -------------------------------------------------------------


def _abs_upper(c) -> Fraction:
    if isinstance(c, QuadReal):
        return abs(c.a) + abs(c.b) * (isqrt(c.q) + 1)
    return abs(Fraction(c))


def _abs_lower_positive(c) -> Fraction:
    """A positive rational lower bound for |c| (c nonzero)."""
    if isinstance(c, QuadReal):
        if not c.b:
            return abs(Fraction(c.a))
        # |c| = 1/|1/c| >= 1/upper(|1/c|)
        return 1 / _abs_upper(abs(c).inverse())
    return abs(Fraction(c))


def root_bound(p: Poly) -> Fraction:
    """Rational B with every real root of p in (-B, B)."""
    lc = _abs_lower_positive(p.lc)
    return 1 + max((_abs_upper(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootInterval:
    """A real root isolated in (lo, hi] with its multiplicity."""

    lo: Fraction
    hi: Fraction
    mult: int
    sign: int | None = None  # sign of an auxiliary polynomial at the root


def isolate_squarefree(p: Poly, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (a, b], ascending, one root of squarefree p each."""
    if p.degree <= 0:
        return []
    chain = sturm_chain(p)
    bound = root_bound(p)
    a = -bound if lo is None else Fraction(lo)
    b = bound if hi is None else Fraction(hi)
    out = []
    stack = [(a, b, _count_with_chain(chain, a, b))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        n_left = _count_with_chain(chain, a, m)
        stack.append((m, b, n - n_left))
        stack.append((a, m, n_left))
    out.sort()
    return out


def _refine(chain, a, b, mid_count=None):
    m = (a + b) / 2
    if _count_with_chain(chain, a, m) == 1:
        return a, m
    return m, b


def real_roots(p: Poly) -> list[RootInterval]:
    """Isolate the distinct real roots of p with their multiplicities."""
    return sign_at_roots(None, p)


def sign_at_roots(f: Poly | None, p: Poly) -> list[RootInterval]:
    """For each distinct real root of p (ascending): isolating interval,
    multiplicity, and the exact sign of f at that root."""
    sqf = squarefree_decompose(p)
    if not sqf:
        return []
    rad = Poly([1])
    for factor, _ in sqf:
        rad = rad * factor
    intervals = isolate_squarefree(rad)
    rad_chain = sturm_chain(rad)
    factor_chains = [(sturm_chain(fac), m) for fac, m in sqf]
    if f is not None and not f.is_zero():
        f_sqf = f.exact_div(poly_gcd(f, f.derivative())) if f.degree > 0 else f
        f_chain = sturm_chain(f_sqf) if f_sqf.degree > 0 else None
        common = poly_gcd(f, rad)
        common_chain = sturm_chain(common) if common.degree > 0 else None
    out = []
    for a, b in intervals:
        mult = 0
        for chain, m in factor_chains:
            if _count_with_chain(chain, a, b):
                mult = m
                break
        s = None
        if f is not None:
            if f.is_zero():
                s = 0
            elif common_chain is not None and _count_with_chain(common_chain, a, b):
                s = 0
            elif f_chain is None:
                s = quad_sign(f.lc)
            else:
                while _count_with_chain(f_chain, a, b):
                    a, b = _refine(rad_chain, a, b)
                s = quad_sign(f(b))
        out.append(RootInterval(a, b, mult, s))
    return out
