"""Radical expression trees evaluated to rigorous enclosures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import DomainError, PrecisionExhausted
from .enclosure import CEnclosure, Enclosure, complex_sqrt_of_real, zeta3
from .quadreal import QuadReal, quad_sign

DEFAULT_PREC = 128
DEFAULT_CAP = 4096


class Expr:
    def __add__(self, other):
        return Add(self, wrap(other))

    def __radd__(self, other):
        return Add(wrap(other), self)

    def __sub__(self, other):
        return Sub(self, wrap(other))

    def __rsub__(self, other):
        return Sub(wrap(other), self)

    def __mul__(self, other):
        return Mul(self, wrap(other))

    def __rmul__(self, other):
        return Mul(wrap(other), self)

    def __truediv__(self, other):
        return Div(self, wrap(other))

    def __rtruediv__(self, other):
        return Div(wrap(other), self)

    def __neg__(self):
        return Neg(self)


def wrap(x) -> Expr:
    return x if isinstance(x, Expr) else Const(x)


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: object  # int, Fraction or QuadReal


@dataclass(frozen=True, eq=False)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, eq=False)
class Sqrt(Expr):
    """Real square root; the argument must be non-negative."""

    arg: Expr


@dataclass(frozen=True, eq=False)
class Cbrt(Expr):
    """Real cube root."""

    arg: Expr


@dataclass(frozen=True, eq=False)
class CSqrt(Expr):
    """Square root of an exact real constant, imaginary when negative."""

    arg: Const


@dataclass(frozen=True, eq=False)
class CCbrt(Expr):
    """Some complex cube root (principal for the enclosure midpoint)."""

    arg: Expr


@dataclass(frozen=True, eq=False)
class Conj(Expr):
    arg: Expr


@dataclass(frozen=True, eq=False)
class Re(Expr):
    arg: Expr


@dataclass(frozen=True, eq=False)
class Zeta(Expr):
    """zeta**power for the primitive third root of unity zeta."""

    power: int = 1


@dataclass(frozen=True, eq=False)
class Lazy(Expr):
    """A value supplied by a callable prec -> Enclosure."""

    fn: Callable[[int], Enclosure]


def pow32(x) -> Expr:
    x = wrap(x)
    return Mul(x, Sqrt(x))


def evaluate(expr: Expr, prec: int):
    """Evaluate to an Enclosure (real) or CEnclosure (complex) at ``prec`` bits."""
    if isinstance(expr, Const):
        return Enclosure.exact(expr.value, prec)
    if isinstance(expr, Lazy):
        return expr.fn(prec)
    if isinstance(expr, (Add, Sub, Mul, Div)):
        left = evaluate(expr.left, prec)
        right = evaluate(expr.right, prec)
        if isinstance(right, CEnclosure) and not isinstance(left, CEnclosure):
            left = CEnclosure.from_real(left)
        if isinstance(expr, Add):
            return left + right
        if isinstance(expr, Sub):
            return left - right
        if isinstance(expr, Mul):
            return left * right
        if isinstance(expr.right, Const) and quad_sign(expr.right.value) == 0:
            raise ZeroDivisionError("division by exact zero")
        return left / right
    if isinstance(expr, Neg):
        return -evaluate(expr.arg, prec)
    if isinstance(expr, Sqrt):
        if isinstance(expr.arg, Const):
            v = expr.arg.value
            if quad_sign(v) < 0:
                raise DomainError("square root of a negative number")
            return Enclosure.exact(v, prec).sqrt(clip=True)
        inner = evaluate(expr.arg, prec)
        if inner.hi < 0:
            raise DomainError("square root of a provably negative subexpression")
        return inner.sqrt(clip=True)
    if isinstance(expr, Cbrt):
        if isinstance(expr.arg, Const) and quad_sign(expr.arg.value) == 0:
            return Enclosure(0, 0, prec)
        return evaluate(expr.arg, prec).cbrt()
    if isinstance(expr, CSqrt):
        return complex_sqrt_of_real(expr.arg.value, prec)
    if isinstance(expr, CCbrt):
        inner = evaluate(expr.arg, prec)
        if isinstance(inner, Enclosure):
            inner = CEnclosure.from_real(inner)
        return inner.cbrt()
    if isinstance(expr, Conj):
        inner = evaluate(expr.arg, prec)
        return inner.conjugate() if isinstance(inner, CEnclosure) else inner
    if isinstance(expr, Re):
        inner = evaluate(expr.arg, prec)
        return inner.re if isinstance(inner, CEnclosure) else inner
    if isinstance(expr, Zeta):
        z = zeta3(prec)
        k = expr.power % 3
        if k == 0:
            return CEnclosure.exact(1, 0, prec)
        return z if k == 1 else z.conjugate()
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def enclose(
    expr: Expr,
    *,
    prec: int = DEFAULT_PREC,
    cap: int = DEFAULT_CAP,
    radius: Fraction | None = None,
):
    """Rigorous enclosure of ``expr``.

    With ``radius`` given, precision doubles from ``prec`` until the
    enclosure radius is at most ``radius``; PrecisionExhausted when the
    cap is passed first.
    """
    p = min(prec, cap)
    while True:
        val = evaluate(expr, p)
        if radius is None:
            return val
        rad = val.radius if isinstance(val, Enclosure) else max(val.re.radius, val.im.radius)
        if rad <= radius:
            return val
        if p >= cap:
            raise PrecisionExhausted(f"radius {float(rad):.3g} still above target at {p} bits")
        p = min(2 * p, cap)


def as_quad(x, q: int) -> QuadReal:
    return x if isinstance(x, QuadReal) else QuadReal(x, 0, q)
