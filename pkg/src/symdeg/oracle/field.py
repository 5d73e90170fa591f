"""Exact scalars: the rationals, optionally with one square root adjoined."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Scalar = Union[Fraction, "QuadElem"]


def rational_sqrt(x: Fraction) -> Fraction | None:
    """The non-negative rational square root of x, if it exists."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


class QuadElem:
    """a + b·√r with rational a, b and a fixed non-square rational r."""

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.r = Fraction(r)

    def _lift(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.r != self.r:
                raise ValueError("mixing different quadratic fields")
            return other
        return QuadElem(other, 0, self.r)

    def __add__(self, other):
        o = self._lift(other)
        return QuadElem(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.r)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadElem(self.a * o.a + self.r * self.b * o.b, self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.r * self.b * self.b

    def inverse(self) -> "QuadElem":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadElem(self.a / nrm, -self.b / nrm, self.r)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadElem):
            return self.r == other.r and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.r)) if self.b else hash(self.a)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.r}))"


def sqrt_in_field(x) -> Scalar:
    """A square root of a rational x, as a rational when possible."""
    x = Fraction(x)
    s = rational_sqrt(x)
    if s is not None:
        return s
    return QuadElem(0, 1, x)
