"""Exact integer, rational and interval arithmetic.

Everything else in the package is built on these primitives, and the test
suite uses them as the independent oracle.  Rationals are plain
:class:`fractions.Fraction` values, which are always stored reduced with a
positive denominator, so equality is structural.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction
RatLike = Union[int, Fraction]


def rat(num: int, den: int = 1) -> Fraction:
    """Canonical rational ``num/den``; raises ZeroDivisionError when den == 0."""
    return Fraction(num, den)


def as_rat(value: RatLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rat(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` (no floats, no exponents)."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None


def format_rat(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat_arith(op: str, a: RatLike, b: RatLike):
    """Apply ``op`` in {add, sub, mul, div, cmp} to two rationals.

    ``cmp`` returns -1, 0 or 1.  Division by zero raises ZeroDivisionError.
    """
    a, b = as_rat(a), as_rat(b)
    if op == "cmp":
        return (a > b) - (a < b)
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    if op == "div" and b == 0:
        raise ZeroDivisionError("rational division by zero")
    return fn(a, b)


def floor_div(a: int, b: int) -> int:
    """The unique q with q*b <= a < (q+1)*b.  Requires b > 0."""
    if b <= 0:
        raise ValueError(f"floor_div needs a positive divisor, got {b}")
    return a // b


def ceil_div(a: int, b: int) -> int:
    if b <= 0:
        raise ValueError(f"ceil_div needs a positive divisor, got {b}")
    return -((-a) // b)


def isqrt(n: int) -> int:
    """Largest r >= 0 with r*r <= n."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def floor_rat(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_rat(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class _Empty:
    """Result of intersecting disjoint intervals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __bool__(self) -> bool:
        return False


EMPTY = _Empty()


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rat(self.lo), as_rat(self.hi)
        if lo > hi:
            raise ValueError(f"malformed interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: RatLike) -> "Interval":
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    def intersect(self, other: "Interval"):
        """Overlap of two intervals, or EMPTY if they are disjoint."""
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return EMPTY
        return Interval(lo, hi)

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains(self, item) -> bool:
        if isinstance(item, Interval):
            return self.lo <= item.lo and item.hi <= self.hi
        value = as_rat(item)
        return self.lo <= value <= self.hi

    def __contains__(self, item) -> bool:
        return self.contains(item)

    def __str__(self) -> str:
        return f"[{format_rat(self.lo)},{format_rat(self.hi)}]"


def interval_ops(op: str, *args):
    """Functional front for the interval operations.

    ``add``/``mul``/``intersect``/``contains`` take two operands, ``neg`` and
    ``width`` take one.
    """
    if op == "add":
        return args[0] + args[1]
    if op == "neg":
        return -args[0]
    if op == "mul":
        return args[0] * args[1]
    if op == "intersect":
        return args[0].intersect(args[1])
    if op == "contains":
        return args[0].contains(args[1])
    if op == "width":
        return args[0].width
    raise ValueError(f"unknown interval operation {op!r}")
