"""Rigorous real and complex interval enclosures at a fixed binary precision.

An :class:`Enclosure` at precision ``p`` stores integers ``lo <= hi`` and
represents the real interval ``[lo / 2**p, hi / 2**p]``.  Every operation
rounds outward, so the exact result of the operation applied to any
points of the operands lies inside the result.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath

from ..errors import DomainError
from .quadreal import QuadReal, exact_isqrt


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def icbrt(n: int) -> int:
    """Floor of the real cube root of an integer."""
    if n < 0:
        return -icbrt_ceil(-n)
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def icbrt_ceil(n: int) -> int:
    if n < 0:
        return -icbrt(-n)
    r = icbrt(n)
    return r if r * r * r == n else r + 1


def _isqrt_ceil(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


class Enclosure:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: int, hi: int, prec: int):
        if lo > hi:
            raise ValueError("empty enclosure")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # construction ------------------------------------------------------
    @classmethod
    def exact(cls, x, prec: int) -> Enclosure:
        """Enclose a rational or QuadReal value."""
        if isinstance(x, QuadReal):
            base = cls.exact(x.a, prec)
            if not x.b:
                return base
            return base + cls.exact(x.b, prec) * cls.sqrt_int(x.q, prec)
        x = Fraction(x)
        num = x.numerator << prec
        return cls(_floor_div(num, x.denominator), _ceil_div(num, x.denominator), prec)

    @classmethod
    def sqrt_int(cls, n: int, prec: int) -> Enclosure:
        r = exact_isqrt(n)
        if r is not None:
            return cls(r << prec, r << prec, prec)
        scaled = n << (2 * prec)
        return cls(isqrt(scaled), _isqrt_ceil(scaled), prec)

    @classmethod
    def hull(cls, parts) -> Enclosure:
        parts = list(parts)
        return cls(min(e.lo for e in parts), max(e.hi for e in parts), parts[0].prec)

    # properties ----------------------------------------------------------
    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.prec)

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.lo + self.hi, 1 << (self.prec + 1))

    @property
    def radius(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << (self.prec + 1))

    def contains(self, x) -> bool:
        if isinstance(x, QuadReal):
            return self.lower - x <= 0 <= self.upper - x
        return self.lower <= x <= self.upper

    __contains__ = contains

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """Sign of every point of the enclosure, or None when it straddles 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def intersects(self, other: Enclosure) -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __float__(self):
        return float(self.midpoint)

    def __repr__(self):
        return f"Enclosure([{float(self.lower)!r}, {float(self.upper)!r}], prec={self.prec})"

    # arithmetic -------------------------------------------------------------
    def _other(self, other) -> Enclosure:
        if isinstance(other, Enclosure):
            if other.prec != self.prec:
                raise ValueError("precision mismatch")
            return other
        return Enclosure.exact(other, self.prec)

    def __add__(self, other):
        if isinstance(other, CEnclosure):
            return NotImplemented
        o = self._other(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi, self.prec)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        if isinstance(other, CEnclosure):
            return NotImplemented
        o = self._other(other)
        return Enclosure(self.lo - o.hi, self.hi - o.lo, self.prec)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, CEnclosure):
            return NotImplemented
        o = self._other(other)
        p = self.prec
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(prods) >> p, -((-max(prods)) >> p), p)

    __rmul__ = __mul__

    def square(self) -> Enclosure:
        p = self.prec
        if self.lo >= 0:
            a, b = self.lo * self.lo, self.hi * self.hi
        elif self.hi <= 0:
            a, b = self.hi * self.hi, self.lo * self.lo
        else:
            a, b = 0, max(self.lo * self.lo, self.hi * self.hi)
        return Enclosure(a >> p, -((-b) >> p), p)

    def reciprocal(self) -> Enclosure:
        if self.contains_zero():
            raise ZeroDivisionError("reciprocal of an enclosure containing 0")
        s = 1 << (2 * self.prec)
        return Enclosure(_floor_div(s, self.hi), _ceil_div(s, self.lo), self.prec)

    def __truediv__(self, other):
        if isinstance(other, CEnclosure):
            return NotImplemented
        o = self._other(other)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, n: int):
        if n == 2:
            return self.square()
        out = Enclosure.exact(1, self.prec)
        for _ in range(n):
            out = out * self
        return out

    def sqrt(self, *, clip: bool = False) -> Enclosure:
        """Square root; a straddling lower end is clipped at 0 only with clip=True
        or when the upper end is itself tiny."""
        p = self.prec
        lo = self.lo
        if self.hi < 0:
            raise DomainError("square root of a negative enclosure")
        if lo < 0:
            if not clip:
                raise DomainError("square root of an enclosure straddling 0")
            lo = 0
        return Enclosure(isqrt(lo << p), _isqrt_ceil(self.hi << p), p)

    def cbrt(self) -> Enclosure:
        p = self.prec
        return Enclosure(icbrt(self.lo << (2 * p)), icbrt_ceil(self.hi << (2 * p)), p)

    def pow32(self, *, clip: bool = False) -> Enclosure:
        """x**(3/2) for x >= 0."""
        return self * self.sqrt(clip=clip)

    def magnitude(self) -> int:
        """max |x| scaled by 2**prec."""
        return max(-self.lo, self.hi)

    def widen(self, ulps: int) -> Enclosure:
        return Enclosure(self.lo - ulps, self.hi + ulps, self.prec)

    def with_prec(self, prec: int) -> Enclosure:
        if prec >= self.prec:
            s = prec - self.prec
            return Enclosure(self.lo << s, self.hi << s, prec)
        s = self.prec - prec
        return Enclosure(self.lo >> s, -((-self.hi) >> s), prec)


class CEnclosure:
    """Rectangular complex enclosure re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re: Enclosure, im: Enclosure):
        self.re = re
        self.im = im

    @property
    def prec(self) -> int:
        return self.re.prec

    @classmethod
    def exact(cls, re, im, prec: int) -> CEnclosure:
        return cls(Enclosure.exact(re, prec), Enclosure.exact(im, prec))

    @classmethod
    def from_real(cls, x: Enclosure) -> CEnclosure:
        return cls(x, Enclosure(0, 0, x.prec))

    def _other(self, other) -> CEnclosure:
        if isinstance(other, CEnclosure):
            return other
        if isinstance(other, Enclosure):
            return CEnclosure.from_real(other)
        return CEnclosure.exact(other, 0, self.prec)

    def __add__(self, other):
        o = self._other(other)
        return CEnclosure(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CEnclosure(-self.re, -self.im)

    def __sub__(self, other):
        o = self._other(other)
        return CEnclosure(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return CEnclosure(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> CEnclosure:
        return CEnclosure(self.re, -self.im)

    def abs2(self) -> Enclosure:
        return self.re.square() + self.im.square()

    def reciprocal(self) -> CEnclosure:
        n = self.abs2()
        return CEnclosure(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._other(other)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self._other(other) / self

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def is_exact_zero(self) -> bool:
        return self.re.lo == self.re.hi == 0 and self.im.lo == self.im.hi == 0

    def _abs_upper_scaled(self) -> int:
        """Upper bound of |z| scaled by 2**prec."""
        r, i = self.re.magnitude(), self.im.magnitude()
        return _isqrt_ceil(r * r + i * i)

    def root(self, n: int) -> CEnclosure:
        """Enclosure of some n-th root (n = 2 or 3) of every point.

        A candidate root w0 is computed in floating point, then certified:
        for a polynomial of degree n some root lies within n*|f(w0)|/|f'(w0)|
        of w0, here |w0**n - c| / |w0|**(n-1).
        """
        p = self.prec
        if self.is_exact_zero():
            return self
        if self.contains_zero():
            bound = self._abs_upper_scaled()
            r = _isqrt_ceil(bound << p) if n == 2 else icbrt_ceil(bound << (2 * p))
            box = Enclosure(-r, r, p)
            return CEnclosure(box, box)
        with mpmath.workprec(p + 32):
            c0 = mpmath.mpc(
                mpmath.mpf(self.re.lo + self.re.hi) / 2 ** (p + 1),
                mpmath.mpf(self.im.lo + self.im.hi) / 2 ** (p + 1),
            )
            w = mpmath.sqrt(c0) if n == 2 else mpmath.cbrt(c0)
            wr = int(mpmath.nint(mpmath.ldexp(w.real, p)))
            wi = int(mpmath.nint(mpmath.ldexp(w.imag, p)))
        w0 = CEnclosure(Enclosure(wr, wr, p), Enclosure(wi, wi, p))
        wn = w0 * w0 if n == 2 else w0 * w0 * w0
        resid = wn - self
        eps = resid._abs_upper_scaled()  # |f(w0)| <= eps / 2**p
        m2 = wr * wr + wi * wi  # |w0|**2 * 2**(2p), exact
        if m2 == 0:
            bound = self._abs_upper_scaled()
            r = _isqrt_ceil(bound << p) if n == 2 else icbrt_ceil(bound << (2 * p))
            box = Enclosure(-r, r, p)
            return CEnclosure(box, box)
        if n == 2:
            # eps / |w0|, scaled: eps * 2**p / sqrt(m2)
            den = isqrt(m2)
            if den == 0:
                den = 1
            rad = _ceil_div(eps << p, den)
        else:
            rad = _ceil_div(eps << (2 * p), m2)
        rad += 1
        return CEnclosure(Enclosure(wr - rad, wr + rad, p), Enclosure(wi - rad, wi + rad, p))

    def sqrt(self) -> CEnclosure:
        return self.root(2)

    def cbrt(self) -> CEnclosure:
        return self.root(3)

    def __repr__(self):
        return f"CEnclosure({self.re!r}, {self.im!r})"


def zeta3(prec: int) -> CEnclosure:
    """The primitive third root of unity (-1 + i*sqrt(3))/2."""
    return CEnclosure(Enclosure.exact(Fraction(-1, 2), prec), Enclosure.sqrt_int(3, prec) * Fraction(1, 2))


def complex_sqrt_of_real(x, prec: int) -> CEnclosure:
    """sqrt of an exact real (rational or QuadReal): real branch when x >= 0,
    i*sqrt(-x) otherwise.  The sign is decided exactly."""
    from .quadreal import quad_sign

    s = quad_sign(x)
    if s == 0:
        return CEnclosure.exact(0, 0, prec)
    if s > 0:
        return CEnclosure.from_real(Enclosure.exact(x, prec).sqrt(clip=True))
    mag = Enclosure.exact(-x, prec).sqrt(clip=True)
    return CEnclosure(Enclosure(0, 0, prec), mag)
