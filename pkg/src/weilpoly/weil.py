"""q-Weil polynomials: expansion, trace polynomial, h+/h-, membership and
classification of real roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import NotPrimePower, NotWeil
from .exactmath import Poly, QuadReal, count_closed, quad_sign
from .exactmath.quadreal import exact_isqrt
from .realroots import Mode, hyperbolic_nonneg_exact


@lru_cache(maxsize=None)
def prime_power_base(q: int) -> int | None:
    """The prime p with q = p**n, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return p if q == 1 else None
        p += 1
    return q


def check_prime_power(q) -> int:
    if isinstance(q, bool) or not isinstance(q, int) or prime_power_base(q) is None:
        raise NotPrimePower(f"q = {q!r} is not a prime power")
    return q


@dataclass(frozen=True)
class WeilCandidate:
    q: int
    g: int
    a: tuple[int, ...] = field(default=())

    def __post_init__(self):
        check_prime_power(self.q)
        if self.g < 0:
            raise ValueError("g must be non-negative")
        a = tuple(int(x) for x in self.a)
        if len(a) != self.g:
            raise ValueError(f"expected {self.g} coefficients, got {len(a)}")
        object.__setattr__(self, "a", a)

    def __str__(self):
        return f"(q={self.q}, g={self.g}, a={self.a})"


# expansion and the functional equation ------------------------------------------


def expand(c: WeilCandidate) -> tuple[int, ...]:
    """Coefficients of h, highest degree first (length 2g + 1)."""
    q, g, a = c.q, c.g, (1,) + c.a
    top = list(a)
    bottom = [a[g - 1 - i] * q ** (i + 1) for i in range(g)]
    return tuple(top + bottom)


def expand_poly(c: WeilCandidate) -> Poly:
    return Poly.descending(expand(c))


def functional_eq_holds(h, q: int, g: int) -> bool:
    """Does monic h of degree 2g satisfy h(x) = x^{2g} q^{-g} h(q/x)?"""
    coeffs = tuple(h.coeffs[::-1]) if isinstance(h, Poly) else tuple(h)
    if len(coeffs) != 2 * g + 1 or coeffs[0] != 1:
        return False
    # coefficient of x^{2g-i} is coeffs[i]; of x^i is coeffs[2g-i]
    return all(coeffs[2 * g - i] == q ** (g - i) * coeffs[i] for i in range(g + 1))


def candidate_from_coeffs(h, q: int) -> WeilCandidate:
    """Read a WeilCandidate back from descending coefficients."""
    coeffs = tuple(h.coeffs[::-1]) if isinstance(h, Poly) else tuple(h)
    g, r = divmod(len(coeffs) - 1, 2)
    if r or not functional_eq_holds(coeffs, q, g):
        raise ValueError("coefficients do not satisfy the functional equation")
    return WeilCandidate(q, g, coeffs[1 : g + 1])


# trace polynomial ---------------------------------------------------------------


@lru_cache(maxsize=256)
def _dickson(k: int, q: int) -> Poly:
    """D_k with x^k + q^k x^{-k} = D_k(x + q/x)."""
    d0, d1 = Poly([2]), Poly([0, 1])
    if k == 0:
        return d0
    for _ in range(k - 1):
        d0, d1 = d1, d1 * Poly([0, 1]) - d0 * q
    return d1


def trace_poly(c: WeilCandidate) -> Poly:
    """Monic integer P of degree g with h(x) = x^g P(x + q/x)."""
    q, g, a = c.q, c.g, (1,) + c.a
    p = Poly([a[g]])
    for k in range(1, g + 1):
        p = p + _dickson(k, q) * a[g - k]
    return p


# h+ and h- -------------------------------------------------------------------------


@dataclass(frozen=True)
class HPlusMinus:
    hplus: Poly
    hminus: Poly


def _tables(q: int, g: int, a: tuple[int, ...]):
    """h+/h- coefficients (lowest degree first, without the leading 1).

    h+ has the roots 2 sqrt(q) - omega_i, i.e. h+(x) = P(x - 2 sqrt q).  The
    published tables for g >= 2 attach the labels the other way round; here
    they are listed under the label matching that convention.
    """
    s = QuadReal(0, 1, q)
    if g == 1:
        (a1,) = a
        return [a1 - 2 * s], [-a1 - 2 * s]
    if g == 2:
        a1, a2 = a
        minus = [2 * q + a2 + 2 * s * a1, -4 * s - a1]
        plus = [2 * q + a2 - 2 * s * a1, -4 * s + a1]
        return plus, minus
    if g == 3:
        a1, a2, a3 = a
        minus = [
            -a3 - 2 * s * a2 - 2 * q * a1 - 2 * q * s,
            a2 + 4 * s * a1 + 9 * q,
            -a1 - 6 * s,
        ]
        plus = [
            a3 - 2 * s * a2 + 2 * q * a1 - 2 * q * s,
            a2 - 4 * s * a1 + 9 * q,
            a1 - 6 * s,
        ]
        return plus, minus
    if g == 4:
        a1, a2, a3, a4 = a
        minus = [
            a4 + 2 * s * a3 + 2 * q * a2 + 2 * q * s * a1 + 2 * q * q,
            -a3 - 4 * s * a2 - 9 * q * a1 - 16 * q * s,
            a2 + 6 * s * a1 + 20 * q,
            -a1 - 8 * s,
        ]
        plus = [
            a4 - 2 * s * a3 + 2 * q * a2 - 2 * q * s * a1 + 2 * q * q,
            a3 - 4 * s * a2 + 9 * q * a1 - 16 * q * s,
            a2 - 6 * s * a1 + 20 * q,
            a1 - 8 * s,
        ]
        return plus, minus
    if g == 5:
        a1, a2, a3, a4, a5 = a
        minus = [
            -a5 - 2 * s * a4 - 2 * q * a3 - 2 * q * s * a2 - 2 * q * q * a1 - 2 * q * q * s,
            a4 + 4 * s * a3 + 9 * q * a2 + 16 * q * s * a1 + 25 * q * q,
            -a3 - 6 * s * a2 - 20 * q * a1 - 50 * q * s,
            a2 + 8 * s * a1 + 35 * q,
            -a1 - 10 * s,
        ]
        plus = [
            a5 - 2 * s * a4 + 2 * q * a3 - 2 * q * s * a2 + 2 * q * q * a1 - 2 * q * q * s,
            a4 - 4 * s * a3 + 9 * q * a2 - 16 * q * s * a1 + 25 * q * q,
            a3 - 6 * s * a2 + 20 * q * a1 - 50 * q * s,
            a2 - 8 * s * a1 + 35 * q,
            a1 - 10 * s,
        ]
        return plus, minus
    raise ValueError("tables cover 1 <= g <= 5")


def _as_quad(x, q):
    return x if isinstance(x, QuadReal) else QuadReal(x, 0, q)


def h_plus_minus(c: WeilCandidate, method: str = "auto") -> HPlusMinus:
    """Monic h+ and h- with roots 2 sqrt(q) - omega_i and 2 sqrt(q) + omega_i.

    ``method`` is "table" (explicit coefficient formulas, g <= 5), "trace"
    (P(x - 2 sqrt q) and (-1)^g P(2 sqrt q - x)) or "auto".
    """
    q, g = c.q, c.g
    if method == "auto":
        method = "table" if 1 <= g <= 5 else "trace"
    if method == "table":
        plus, minus = _tables(q, g, c.a)
        return HPlusMinus(
            Poly([_as_quad(x, q) for x in plus] + [1]),
            Poly([_as_quad(x, q) for x in minus] + [1]),
        )
    P = trace_poly(c)
    s2 = 2 * QuadReal(0, 1, q)
    hplus = P.compose_linear(1, -s2)
    hminus = P.compose_linear(-1, s2) * (-1) ** g
    return HPlusMinus(hplus, hminus)


# membership -------------------------------------------------------------------------


def is_weil(c: WeilCandidate, method: str = "hpm") -> bool:
    """Exact membership in W_q(g).

    "hpm": both h+ and h- have only real non-negative roots.
    "trace": the trace polynomial has g roots (with multiplicity) in
    [-2 sqrt q, 2 sqrt q].
    """
    if c.g == 0:
        return True
    if method == "trace":
        return trace_in_interval(trace_poly(c), c.q)
    hpm = h_plus_minus(c)
    return hyperbolic_nonneg_exact(hpm.hplus, Mode.REAL_NONNEG) and hyperbolic_nonneg_exact(
        hpm.hminus, Mode.REAL_NONNEG
    )


def trace_in_interval(P: Poly, q: int) -> bool:
    s2 = 2 * QuadReal(0, 1, q)
    return count_closed(P, -s2, s2) == P.degree


def _require_weil(c: WeilCandidate) -> None:
    if not is_weil(c):
        raise NotWeil(f"{c} is not a q-Weil polynomial")


def has_real_root(c: WeilCandidate, *, check: bool = True) -> bool:
    """h+(0) = 0 or h-(0) = 0 (exact)."""
    if check:
        _require_weil(c)
    if c.g == 0:
        return False
    hpm = h_plus_minus(c)
    return quad_sign(hpm.hplus[0]) == 0 or quad_sign(hpm.hminus[0]) == 0


# classification -----------------------------------------------------------------------


@dataclass(frozen=True)
class RealRootClass:
    """Real-root structure of a Weil polynomial.

    kind "none": no real roots.
    kind "sqrt-factors" (q square, s = sqrt q): h = (x + s)^{2k} (x - s)^{2l} h0.
    kind "x2-q-factor" (q not a square): h = (x^2 - q)^{2m} h0.
    The cofactor h0 has no real roots.
    """

    kind: str
    cofactor: WeilCandidate
    k: int = 0
    l: int = 0
    m: int = 0

    def factor_poly(self) -> Poly:
        q = self.cofactor.q
        if self.kind == "sqrt-factors":
            s = exact_isqrt(q)
            return Poly([s, 1]) ** (2 * self.k) * Poly([-s, 1]) ** (2 * self.l)
        if self.kind == "x2-q-factor":
            return Poly([-q, 0, 1]) ** (2 * self.m)
        return Poly([1])

    def expand(self) -> tuple[int, ...]:
        full = self.factor_poly() * expand_poly(self.cofactor)
        return tuple(full.coeffs[::-1])

    def render(self) -> str:
        a = ",".join(str(x) for x in self.cofactor.a)
        if self.kind == "sqrt-factors":
            return f"sqrt-factors(k={self.k},l={self.l};a=({a}))"
        if self.kind == "x2-q-factor":
            return f"x2-q-factor(m={self.m};a=({a}))"
        return "none"


def _divide_out(h: Poly, d: Poly) -> tuple[Poly, int]:
    n = 0
    while h.degree >= d.degree:
        quot, rem = h.divmod(d)
        if not rem.is_zero():
            break
        h = Poly([int(x) for x in quot.coeffs])
        n += 1
    return h, n


def classify_real_roots(c: WeilCandidate) -> RealRootClass:
    """Divide out the real-root factors over the integers, maximally."""
    _require_weil(c)
    q = c.q
    h = expand_poly(c)
    s = exact_isqrt(q)
    if s is not None:
        h, k = _divide_out(h, Poly([s * s, 2 * s, 1]))
        h, l = _divide_out(h, Poly([s * s, -2 * s, 1]))
        cof = candidate_from_coeffs(h, q)
        if k or l:
            return RealRootClass("sqrt-factors", cof, k=k, l=l)
        return RealRootClass("none", cof)
    h, m = _divide_out(h, Poly([q * q, 0, -2 * q, 0, 1]))
    cof = candidate_from_coeffs(h, q)
    if m:
        return RealRootClass("x2-q-factor", cof, m=m)
    return RealRootClass("none", cof)


# the coefficient box ---------------------------------------------------------------------


def coefficient_bounds(q: int, g: int) -> tuple[int, ...]:
    """B_i = C(2g, i) * ceil(q^{i/2}) bounds |a_i| for every member."""
    out = []
    for i in range(1, g + 1):
        if i % 2 == 0:
            root = q ** (i // 2)
        else:
            r = exact_isqrt(q**i)
            root = r if r is not None else _isqrt_ceil(q**i)
        out.append(comb(2 * g, i) * root)
    return tuple(out)


def _isqrt_ceil(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else r + 1
