"""Exact arithmetic in the real quadratic field Q(sqrt(q))."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


@lru_cache(maxsize=None)
def exact_isqrt(n: int) -> int | None:
    """Return r with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_a_plus_b_sqrt(a, b, d) -> int:
    """Exact sign of a + b*sqrt(d) for rationals a, b and rational d >= 0."""
    sa, sb = _sgn(a), _sgn(b)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = a * a, b * b * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def floor_a_plus_b_sqrt(a, b, d) -> int:
    """Exact floor of a + b*sqrt(d) (rationals a, b, d with d >= 0)."""
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    # b*sqrt(d) = sign(b) * sqrt(b^2 d); integer estimate from isqrt of the scaled value
    t = b * b * d
    scale = 1 << 64
    est = Fraction(isqrt((t.numerator * scale * scale) // t.denominator), scale)
    if b < 0:
        est = -est
    n = (a + est).__floor__()
    # fix up against the exact sign test; the estimate is within 1 of the truth
    while sign_a_plus_b_sqrt(a - n, b, d) < 0:
        n -= 1
    while sign_a_plus_b_sqrt(a - n - 1, b, d) >= 0:
        n += 1
    return n


def ceil_a_plus_b_sqrt(a, b, d) -> int:
    return -floor_a_plus_b_sqrt(-Fraction(a), -Fraction(b), d)


class QuadReal:
    """The real number a + b*sqrt(q) with rational a, b.

    When q is a perfect square the radical is folded into ``a`` so the
    representation stays canonical.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 1):
        if q <= 0:
            raise ValueError("radicand must be positive")
        a = Fraction(a)
        b = Fraction(b)
        if b:
            r = exact_isqrt(q)
            if r is not None:
                a += b * r
                b = Fraction(0)
        self.a = a
        self.b = b
        self.q = q

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, q: int) -> QuadReal:
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.q = q
        return obj

    @classmethod
    def sqrt_q(cls, q: int) -> QuadReal:
        return cls(0, 1, q)

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> QuadReal | None:
        if isinstance(other, QuadReal):
            if other.q != self.q:
                if not other.b:
                    return QuadReal._raw(other.a, other.b, self.q)
                if not self.b:
                    return None
                raise ValueError(f"mixing Q(sqrt({self.q})) and Q(sqrt({other.q}))")
            return other
        if isinstance(other, (int, Rational)):
            return QuadReal._raw(Fraction(other), Fraction(0), self.q)
        return None

    def _q_of(self, other: QuadReal) -> int:
        return self.q if self.b or not other.b else other.q

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadReal._raw(self.a + o.a, self.b + o.b, self._q_of(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadReal._raw(self.a - o.a, self.b - o.b, self._q_of(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadReal._raw(-self.a, -self.b, self.q)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = self._q_of(o)
        if not self.b:
            if not o.b:
                return QuadReal._raw(self.a * o.a, Fraction(0), q)
            return QuadReal._raw(self.a * o.a, self.a * o.b, q)
        if not o.b:
            return QuadReal._raw(self.a * o.a, self.b * o.a, q)
        return QuadReal._raw(
            self.a * o.a + self.b * o.b * q, self.a * o.b + self.b * o.a, q
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadReal:
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("inverse of zero")
            return QuadReal._raw(1 / self.a, Fraction(0), self.q)
        norm = self.a * self.a - self.b * self.b * self.q
        return QuadReal._raw(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.b:
            if not o.a:
                raise ZeroDivisionError("division by zero")
            return QuadReal._raw(self.a / o.a, self.b / o.a, self._q_of(o))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadReal._raw(Fraction(1), Fraction(0), self.q)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadReal:
        """Galois conjugate a - b*sqrt(q)."""
        return QuadReal._raw(self.a, -self.b, self.q)

    # comparison -------------------------------------------------------
    def sign(self) -> int:
        return sign_a_plus_b_sqrt(self.a, self.b, self.q)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadReal with {type(other).__name__}")
        return sign_a_plus_b_sqrt(self.a - o.a, self.b - o.b, self.q)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_rational(self) -> bool:
        return not self.b

    def __floor__(self) -> int:
        return floor_a_plus_b_sqrt(self.a, self.b, self.q)

    def __ceil__(self) -> int:
        return ceil_a_plus_b_sqrt(self.a, self.b, self.q)

    def __float__(self):
        return float(self.a) + float(self.b) * self.q**0.5

    def __repr__(self):
        return f"QuadReal({self.a}, {self.b}, q={self.q})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.q})"
        sep = "+" if self.b > 0 else "-"
        return f"{self.a} {sep} {abs(self.b)}*sqrt({self.q})"


def quad_sign(x) -> int:
    """Exact sign (-1, 0, 1) of a QuadReal or rational."""
    if isinstance(x, QuadReal):
        return x.sign()
    return _sgn(x)
