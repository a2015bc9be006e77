"""Closed-form non-negative-real-rootedness tests for degrees 2 through 5.

Every predicate is exact.  Radical bounds of (dagger)-type are squared into
polynomial inequalities; the theta and Ferrari quantities are carried as
rigorous enclosures with precision doubling, and any comparison they cannot
settle is decided by a Sturm count on the full polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DeltaPositive, PrecisionExhausted
from ..exactmath import (
    DEFAULT_CAP,
    DEFAULT_PREC,
    CEnclosure,
    Enclosure,
    Poly,
    count_real_roots_with_multiplicity,
    poly_gcd,
    quad_sign,
    real_roots,
)
from ..exactmath.enclosure import complex_sqrt_of_real, zeta3
from .hyperbolic import Mode, hyperbolic_nonneg_exact


def _num(x):
    return Fraction(x) if isinstance(x, int) else x


def _le(x, y) -> bool:
    return quad_sign(y - x) >= 0


def _lt(x, y) -> bool:
    return quad_sign(y - x) > 0


def _sign_ok(x, strict: bool, positive: bool) -> bool:
    """x >= 0 (or > 0) when positive, else x <= 0 (or < 0)."""
    s = quad_sign(x)
    if not positive:
        s = -s
    return s > 0 if strict else s >= 0


# degree 2 and 3 ---------------------------------------------------------------


def deg2_real_nonneg(a2, a1, a0, strict: bool = False, *, paper_literal: bool = False) -> bool:
    """Roots of a2 x^2 + a1 x + a0 (a2 > 0) all real and >= 0 (> 0 if strict)."""
    a2, a1, a0 = map(_num, (a2, a1, a0))
    if quad_sign(a2) <= 0:
        raise ValueError("a2 must be positive")
    if not _sign_ok(a1, strict, positive=paper_literal):
        return False
    if not _sign_ok(a0, strict, positive=True):
        return False
    return _le(4 * a2 * a0, a1 * a1)


def deg3_real_nonneg(a3, a2, a1, a0, strict: bool = False, *, paper_literal: bool = False) -> bool:
    """Roots of a3 x^3 + ... + a0 (a3 > 0) all real and >= 0 (> 0 if strict)."""
    a3, a2, a1, a0 = map(_num, (a3, a2, a1, a0))
    if quad_sign(a3) <= 0:
        raise ValueError("a3 must be positive")
    if not _sign_ok(a2, strict, positive=paper_literal):
        return False
    if not _sign_ok(a1, strict, positive=True):
        return False
    if not _le(3 * a3 * a1, a2 * a2):
        return False
    if not _sign_ok(a0, strict, positive=False):
        return False
    return dagger_holds(a3, a2, a1, a0)


def dagger_holds(a3, a2, a1, a0) -> bool:
    """|27 a3^2 a0 + 2 a2^3 - 9 a1 a2 a3| <= 2 (a2^2 - 3 a1 a3)^{3/2}, squared."""
    d = a2 * a2 - 3 * a1 * a3
    if quad_sign(d) < 0:
        return False
    m = 27 * a3 * a3 * a0 + 2 * a2**3 - 9 * a1 * a2 * a3
    return _le(m * m, 4 * d**3)


# the theta set ----------------------------------------------------------------


def theta_cubic(u2, u3) -> Poly:
    """Monic cubic whose roots are the three elements of the theta set.

    For a root r of y^3 + u2 y + u3 the matching theta is -u2 r^2 - 3 u3 r;
    this is the characteristic polynomial of that map.
    """
    return Poly(
        [
            -(2 * u2**3 * u3**2 + 27 * u3**4),
            u2**4 + 18 * u2 * u3**2,
            -2 * u2**2,
            1,
        ]
    )


def _cubic_disc(p: Poly):
    d, c, b, _ = p.coeffs
    return 18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d


@dataclass(frozen=True)
class ResolventData:
    u2: object
    u3: object
    delta: object
    thetas: tuple  # sorted componentwise: theta_1 <= theta_2 <= theta_3
    construction_order: tuple  # k = 0, 1, 2 as produced by the formula
    ties: tuple  # (theta_1 == theta_2, theta_2 == theta_3), exact
    cubic: Poly
    prec: int

    @property
    def theta1(self) -> Enclosure:
        return self.thetas[0]

    @property
    def theta2(self) -> Enclosure:
        return self.thetas[1]


def _sort_componentwise(encs) -> tuple:
    los = sorted(e.lo for e in encs)
    his = sorted(e.hi for e in encs)
    p = encs[0].prec
    return tuple(Enclosure(lo, hi, p) for lo, hi in zip(los, his))


def _theta_values(u2, u3, delta, prec: int, *, omega_power: int = 0) -> tuple:
    sqrt_delta = complex_sqrt_of_real(delta, prec)
    c = (sqrt_delta - u3) * Fraction(1, 2)
    zeta = zeta3(prec)
    omega = c.cbrt()
    for _ in range(omega_power % 3):
        omega = omega * zeta
    x = sqrt_delta * Fraction(3, 2) + Fraction(9, 2) * u3
    shift = Fraction(2, 3) * u2 * u2
    base = omega * x
    out = []
    zk = CEnclosure.exact(1, 0, prec)
    for _ in range(3):
        term = zk * base
        # the second summand is the complex conjugate of the first
        out.append(shift - term.re * 2)
        zk = zk * zeta
    return tuple(out)


def _tie_flags(cubic: Poly) -> tuple:
    roots = real_roots(cubic)
    seq = []
    for i, r in enumerate(roots):
        seq.extend([i] * r.mult)
    if len(seq) != 3:
        raise DeltaPositive("theta cubic has nonreal roots")
    return (seq[0] == seq[1], seq[1] == seq[2])


def theta_sorted(
    u2,
    u3,
    *,
    prec: int = DEFAULT_PREC,
    cap: int = DEFAULT_CAP,
    refine: bool = True,
    omega_power: int = 0,
) -> ResolventData:
    """The sorted theta triple for the depressed cubic y^3 + u2 y + u3.

    With ``refine`` the precision doubles until distinct thetas have
    disjoint enclosures; exact ties are read off the theta cubic first, so
    no precision is spent trying to separate equal values.
    """
    u2, u3 = map(_num, (u2, u3))
    delta = u3 * u3 + Fraction(4, 27) * u2**3
    if quad_sign(delta) > 0:
        raise DeltaPositive("u3^2 + 4 u2^3 / 27 > 0")
    cubic = theta_cubic(u2, u3)
    if quad_sign(u2) == 0 and quad_sign(u3) == 0:
        z = Enclosure(0, 0, prec)
        return ResolventData(u2, u3, delta, (z, z, z), (z, z, z), (True, True), cubic, prec)
    if quad_sign(_cubic_disc(cubic)) == 0:
        ties = _tie_flags(cubic)
    else:
        ties = (False, False)
    p = min(prec, cap)
    while True:
        raw = _theta_values(u2, u3, delta, p, omega_power=omega_power)
        srt = _sort_componentwise(raw)
        if not refine:
            break
        separated = all(
            ties[i] or srt[i].hi < srt[i + 1].lo for i in range(2)
        )
        if separated:
            break
        if p >= cap:
            raise PrecisionExhausted(f"theta enclosures overlap at {p} bits")
        p = min(2 * p, cap)
    return ResolventData(u2, u3, delta, srt, raw, ties, cubic, p)


def theta_position(cubic: Poly, t) -> tuple[bool, bool]:
    """Exact (theta_1 <= t, t <= theta_2) for the roots of a real-rooted cubic."""
    n_le = count_real_roots_with_multiplicity(cubic, None, t)
    n_lt = n_le
    if quad_sign(cubic(t)) == 0:
        m = 0
        p = cubic
        while quad_sign(p(t)) == 0:
            m += 1
            p = p.derivative()
        n_lt = n_le - m
    return n_le >= 1, n_lt <= 1


# degree 4 -----------------------------------------------------------------------


def deg4_side_conditions(a4, a3, a2, a1, a0, strict=False, *, paper_literal=False) -> bool:
    """Conditions (i)-(vi): the derivative part plus the sign of a0."""
    if not _sign_ok(a3, strict, positive=False):
        return False
    if not _sign_ok(a2, strict, positive=True):
        return False
    if not _le(8 * a4 * a2, 3 * a3 * a3):
        return False
    if not _sign_ok(a1, strict, positive=False):
        return False
    c = -a3**3 / (8 * a4 * a4) + a3 * a2 / (2 * a4)
    r = a3 * a3 / 4 - Fraction(2, 3) * a2 * a4
    dev = a1 - c
    if not _le(dev * dev * a4**4, r**3):
        return False
    return _sign_ok(a0, strict, positive=not paper_literal)


def deg4_quantities(a4, a3, a2, a1):
    u2 = (8 * a2 * a4 - 3 * a3 * a3) / (16 * a4 * a4)
    u3 = (a3**3 - 4 * a2 * a3 * a4 + 8 * a1 * a4 * a4) / (32 * a4**3)
    G = 3 * a3**4 / (256 * a4**3) - a3 * a3 * a2 / (16 * a4 * a4) + a3 * a1 / (4 * a4)
    return u2, u3, G


def _compare_theta(res: ResolventData, t) -> tuple[bool | None, bool | None]:
    """(theta_1 <= t, t <= theta_2) from the enclosures; None when undecided."""
    te = Enclosure.exact(t, res.prec)
    th1, th2 = res.thetas[0], res.thetas[1]
    lo_ok = True if th1.hi <= te.lo else (False if th1.lo > te.hi else None)
    hi_ok = True if te.hi <= th2.lo else (False if te.lo > th2.hi else None)
    return lo_ok, hi_ok


def deg4_real_nonneg(
    a4,
    a3,
    a2,
    a1,
    a0,
    strict: bool = False,
    *,
    paper_literal: bool = False,
    prec: int = DEFAULT_PREC,
    cap: int = DEFAULT_CAP,
    sort_theta: bool = True,
) -> bool:
    """Roots of the quartic (a4 > 0) all real and >= 0 (> 0 if strict).

    ``sort_theta=False`` uses the thetas in construction order; it exists
    only to demonstrate that the sorting step is necessary.
    """
    a4, a3, a2, a1, a0 = map(_num, (a4, a3, a2, a1, a0))
    if quad_sign(a4) <= 0:
        raise ValueError("a4 must be positive")
    if not deg4_side_conditions(a4, a3, a2, a1, a0, strict, paper_literal=paper_literal):
        return False
    u2, u3, G = deg4_quantities(a4, a3, a2, a1)
    t = (a0 - G) / a4
    if not sort_theta:
        res = theta_sorted(u2, u3, prec=prec, cap=cap, refine=False)
        th1, th2 = res.construction_order[0], res.construction_order[1]
        te = Enclosure.exact(t, res.prec)
        return bool(th1.lower <= te.upper and te.lower <= th2.upper)
    p = prec
    while True:
        try:
            res = theta_sorted(u2, u3, prec=p, cap=cap, refine=False)
        except PrecisionExhausted:
            break
        lo_ok, hi_ok = _compare_theta(res, t)
        if lo_ok is False or hi_ok is False:
            return False
        if lo_ok and hi_ok:
            return True
        if p >= cap or quad_sign(res.cubic(t)) == 0:
            break  # t equals some theta: no enclosure will ever decide it
        p = min(2 * p, cap)
    lo_ok, hi_ok = theta_position(theta_cubic(u2, u3), t)
    return lo_ok and hi_ok


# Ferrari -------------------------------------------------------------------------


@dataclass(frozen=True)
class FerrariData:
    u2: object
    u3: object
    u4: object
    v2: object
    v3: object
    C: CEnclosure | None
    y: CEnclosure | None
    roots: tuple  # the four x_{i1,i2} as complex enclosures, (++, +-, -+, --)
    all_real: bool
    gammas: tuple | None  # sorted real parts when all_real
    prec: int


def depressed_quartic(u2, u3, u4) -> Poly:
    return Poly([u4, 4 * u3, 2 * u2, 0, 1])


def _ferrari_once(u2, u3, u4, v2, v3, prec, c_branch, sqrt_signs):
    C = y = None
    s1, s2 = sqrt_signs
    if quad_sign(u3) == 0:
        inner = complex_sqrt_of_real(u2 * u2 - u4, prec)
        roots = []
        for i1 in (1, -1):
            for i2 in (1, -1):
                z = (inner * i2 - u2).sqrt()
                roots.append(z * (i1 * s1))
        return C, y, tuple(roots)
    zeta = zeta3(prec)
    if quad_sign(v2) == 0:
        C = CEnclosure.exact(-v3, 0, prec).cbrt()
    else:
        disc = complex_sqrt_of_real(v3 * v3 + Fraction(4, 27) * v2**3, prec)
        C = ((disc - v3) * Fraction(1, 2)).cbrt()
    for _ in range(c_branch % 3):
        C = C * zeta
    y = C - Fraction(2, 3) * u2
    if quad_sign(v2) != 0:
        y = y - (C * 3).reciprocal() * v2
    s = (y * 2).sqrt() * s1
    if s.contains_zero():
        raise ZeroDivisionError("sqrt(2y) enclosure contains zero")
    s_inv = s.reciprocal()
    roots = []
    for i1 in (1, -1):
        w = (-(y * 2) - u2 * 4 - s_inv * (8 * i1) * u3).sqrt() * s2
        for i2 in (1, -1):
            roots.append((s * i1 + w * i2) * Fraction(1, 2))
    return C, y, tuple(roots)


def ferrari_roots(
    u2,
    u3,
    u4,
    *,
    prec: int = DEFAULT_PREC,
    cap: int = DEFAULT_CAP,
    c_branch: int = 0,
    sqrt_signs: tuple[int, int] = (1, 1),
) -> FerrariData:
    """Roots of x^4 + 2 u2 x^2 + 4 u3 x + u4 by Ferrari's method.

    Real-rootedness is decided exactly by a Sturm count; when it holds the
    real parts are returned sorted componentwise as gamma_1..gamma_4.
    """
    u2, u3, u4 = map(_num, (u2, u3, u4))
    v2 = -u2 * u2 / 3 - u4
    v3 = Fraction(2, 3) * u2 * u4 - Fraction(2, 27) * u2**3 - 2 * u3 * u3
    all_real = count_real_roots_with_multiplicity(depressed_quartic(u2, u3, u4)) == 4
    p = min(prec, cap)
    while True:
        try:
            C, y, roots = _ferrari_once(u2, u3, u4, v2, v3, p, c_branch, sqrt_signs)
            break
        except ZeroDivisionError:
            if p >= cap:
                raise PrecisionExhausted(f"Ferrari step undecided at {p} bits") from None
            p = min(2 * p, cap)
    gammas = _sort_componentwise([r.re for r in roots]) if all_real else None
    return FerrariData(u2, u3, u4, v2, v3, C, y, roots, all_real, gammas, p)


# degree 5 (monic) ------------------------------------------------------------------


def deg5_quantities(a4, a3, a2, a1):
    u2 = Fraction(3, 10) * a3 - Fraction(3, 25) * a4 * a4
    u3 = Fraction(2, 125) * a4**3 - Fraction(3, 50) * a3 * a4 + Fraction(1, 10) * a2
    u4 = (
        -Fraction(3, 625) * a4**4
        + Fraction(3, 125) * a4 * a4 * a3
        - Fraction(2, 25) * a4 * a2
        + Fraction(1, 5) * a1
    )
    G = Fraction(3, 125) * a4**4 - Fraction(3, 25) * a4 * a4 * a3 + Fraction(2, 5) * a2 * a4
    return u2, u3, u4, G


def deg5_prefix_conditions(a4, a3, a2, strict=False) -> bool:
    """Conditions (i)-(v): the roots of f'' are real and non-negative."""
    if not _sign_ok(a4, strict, positive=False):
        return False
    if not _sign_ok(a3, strict, positive=True):
        return False
    if not _le(5 * a3, 2 * a4 * a4):
        return False
    c = Fraction(3, 5) * a3 * a4 - Fraction(4, 25) * a4**3
    e = Fraction(4, 25) * a4 * a4 - Fraction(2, 5) * a3
    dev = a2 - c
    if not _le(4 * dev * dev, 25 * e**3):
        return False
    return _sign_ok(a2, strict, positive=False)


def _lambda_poly(a4, a3, a2, a1) -> Poly:
    """f(x) - a0 for the monic quintic."""
    return Poly([0, a1, a2, a3, a4, 1])


def _eval_enc(f: Poly, x: Enclosure) -> Enclosure:
    acc = Enclosure(0, 0, x.prec)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def deg5_monic_real_nonneg(
    a4,
    a3,
    a2,
    a1,
    a0,
    strict: bool = False,
    *,
    prec: int = DEFAULT_PREC,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Roots of x^5 + a4 x^4 + ... + a0 all real and >= 0 (> 0 if strict)."""
    a4, a3, a2, a1, a0 = map(_num, (a4, a3, a2, a1, a0))
    if not deg5_prefix_conditions(a4, a3, a2, strict):
        return False
    u2, u3, u4, G = deg5_quantities(a4, a3, a2, a1)
    t = (a1 - G) / 5
    if not _theta_between(u2, u3, t, prec, cap):
        return False
    if not _sign_ok(a1, strict, positive=True):
        return False
    if not _sign_ok(a0, strict, positive=False):
        return False
    lam = _lambda_poly(a4, a3, a2, a1)
    shift = a4 / 5
    p = prec
    multiple_root = None
    while True:
        try:
            fd = ferrari_roots(u2, u3, u4, prec=p, cap=cap)
        except PrecisionExhausted:
            break
        if not fd.all_real:
            return False
        # gamma ascending gives beta_4, beta_3, beta_2, beta_1
        vals = [_eval_enc(lam, g - shift) + a0 for g in fd.gammas]
        decided = True
        for j, v in enumerate(vals):
            s = v.sign()
            want_nonneg = j % 2 == 0
            if s is None:
                decided = False
            elif want_nonneg and s < 0 or not want_nonneg and s > 0:
                return False
        if decided:
            return True
        if fd.prec >= cap or p >= cap:
            break
        if multiple_root is None:
            f = Poly([a0, a1, a2, a3, a4, 1])
            multiple_root = poly_gcd(f, f.derivative()).degree > 0
        if multiple_root:
            break  # an undecided critical value may be an exact zero
        p = min(2 * max(p, fd.prec), cap)
    f = Poly([a0, a1, a2, a3, a4, 1])
    return hyperbolic_nonneg_exact(f, Mode.REAL_POS if strict else Mode.REAL_NONNEG)


def _theta_between(u2, u3, t, prec, cap) -> bool:
    p = prec
    while True:
        try:
            res = theta_sorted(u2, u3, prec=p, cap=cap, refine=False)
        except PrecisionExhausted:
            break
        lo_ok, hi_ok = _compare_theta(res, t)
        if lo_ok is False or hi_ok is False:
            return False
        if lo_ok and hi_ok:
            return True
        if p >= cap or quad_sign(res.cubic(t)) == 0:
            break  # t equals some theta: no enclosure will ever decide it
        p = min(2 * p, cap)
    lo_ok, hi_ok = theta_position(theta_cubic(u2, u3), t)
    return lo_ok and hi_ok
