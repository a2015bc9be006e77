"""Dense univariate polynomials over Z, Q or Q(sqrt(q)).

Coefficients are stored lowest degree first.  Integer polynomials keep
``int`` coefficients; any division promotes them to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .quadreal import QuadReal, quad_sign


def _div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> Poly:
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def descending(cls, coeffs: Sequence) -> Poly:
        return cls(reversed(list(coeffs)))

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    # basic properties ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    @property
    def ring(self) -> str:
        if any(isinstance(c, QuadReal) and c.b for c in self.coeffs):
            return "Q(sqrt q)"
        if all(isinstance(c, int) for c in self.coeffs):
            return "ZZ"
        return "QQ"

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction, QuadReal)):
                other = Poly([other])
            else:
                return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"({c})*{mono}")
            else:
                terms.append(f"({c})")
        return " + ".join(terms)

    # arithmetic --------------------------------------------------------
    @staticmethod
    def _lift(other) -> Poly:
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        if len(rem) <= dq:
            return Poly(), self
        quot = [0] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t = _div(c, lc)
            quot[i - dq] = t
            for j, oc in enumerate(other.coeffs):
                rem[i - dq + j] = rem[i - dq + j] - t * oc
            rem[i] = 0
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return quot

    def scale(self, c) -> Poly:
        return Poly([x * c for x in self.coeffs])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.lc
        if lc == 1:
            return self
        return Poly([_div(c, lc) for c in self.coeffs])

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_linear(self, a, b) -> Poly:
        """Return p(a*x + b)."""
        out = Poly()
        lin = Poly([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def taylor_shift(self, c) -> Poly:
        """Return p(x + c)."""
        return self.compose_linear(1, c)

    def content_int(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g


def poly_gcd(p: Poly, r: Poly) -> Poly:
    """Monic gcd over the coefficient field (Q or Q(sqrt q))."""
    a, b = p, r
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: return [(p_i, m_i)] with p = lc * prod p_i**m_i.

    The factors are monic, squarefree, pairwise coprime, and listed by
    increasing multiplicity; constant factors are omitted.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out: list[tuple[Poly, int]] = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def sign_of(x) -> int:
    return quad_sign(x)
