"""Eudoxus reals: almost homomorphisms Z -> Z carrying a defect certificate.

A real number x is represented by an integer function f with f(p) ~ p*x and
an integer ``cert`` such that

    |f(p + q) - f(p) - f(q)| <= cert      for all integers p, q.

Two representatives of the same real differ by a bounded function, so no
finite set of values determines the real and there is no equality test;
only budgeted sign/compare queries and rational enclosures are offered.

Enclosures
----------
Write C = cert.  Summing the defect bound along p = q + q + ... + q gives

    |f(m*q) - m*f(q)| <= m*C + |f(0)|            (m >= 0)

and since |f(0)| = |d_f(0, 0)| <= C, dividing by m*q and letting m -> oo
(f(m*q)/(m*q) -> x) yields

    |f(q) - q*x| <= C          for every q >= 1.

Hence x lies in [(f(q) - C)/q, (f(q) + C)/q], an interval of width 2C/q.
This is the only way the rest of the module learns anything about x.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .numeric import Interval, as_rat, ceil_div, ceil_rat, floor_rat, isqrt

DEFAULT_BUDGET_EXPONENT = 64

# mul() enumerates |e| <= cert(y) to bound the composite's defect; beyond this
# the linear growth bound is used instead (sound, slightly looser).
MUL_ENUMERATION_LIMIT = 512


@dataclass(frozen=True)
class Budget:
    """Caps evaluation arguments at 2**max_arg_exponent during refinement."""

    max_arg_exponent: int = DEFAULT_BUDGET_EXPONENT

    def __post_init__(self):
        if self.max_arg_exponent < 1:
            raise ValueError("max_arg_exponent must be >= 1")

    @property
    def max_q(self) -> int:
        return 1 << self.max_arg_exponent


DEFAULT_BUDGET = Budget()


class EudoxusError(Exception):
    pass


class BudgetExceeded(EudoxusError):
    """A refinement needed an argument beyond the budget.

    ``best`` is the tightest enclosure that could be computed, or None.
    """

    def __init__(self, message: str, best: Optional[Interval] = None):
        super().__init__(message)
        self.best = best


class SignInconclusive(EudoxusError):
    def __init__(self, message: str, enclosure: Optional[Interval] = None):
        super().__init__(message)
        self.enclosure = enclosure


class AlmostHom:
    """A certified almost homomorphism Z -> Z.

    ``floor_exact`` records that eval(p) == floor(p*x) for every p >= 0, which
    holds for integer, rational and integer-square-root constructions and is
    preserved by finite suprema.  ``rational`` is the exact value when the
    construction path proves it rational; it only feeds digit printing.
    """

    __slots__ = ("_fn", "_cache", "cert", "label", "floor_exact", "rational")

    def __init__(self, fn: Callable[[int], int], cert: int, label: str = "f", *,
                 floor_exact: bool = False, rational: Optional[Fraction] = None):
        if cert < 0:
            raise ValueError("certificate must be non-negative")
        self._fn = fn
        self._cache: dict = {}
        self.cert = int(cert)
        self.label = label
        self.floor_exact = floor_exact
        self.rational = rational

    def eval(self, p: int) -> int:
        # Racing inserts store the same value, so no lock is needed.
        try:
            return self._cache[p]
        except KeyError:
            pass
        value = self._fn(p)
        if not isinstance(value, int):
            value = int(value)
        self._cache[p] = value
        return value

    __call__ = eval

    def __repr__(self) -> str:
        return f"AlmostHom({self.label}, cert={self.cert})"


# ---------------------------------------------------------------- constructors

def eu_embed(a: int) -> AlmostHom:
    """The integer a as the genuine homomorphism p -> a*p."""
    a = int(a)
    return AlmostHom(lambda p: a * p, 0, str(a), floor_exact=True,
                     rational=Fraction(a))


def from_rational(r) -> AlmostHom:
    """p -> floor(p*r).

    floor(u + v) - floor(u) - floor(v) is always 0 or 1, so cert 1.
    """
    r = as_rat(r)
    num, den = r.numerator, r.denominator
    return AlmostHom(lambda p: (p * num) // den, 1, f"{num}/{den}",
                     floor_exact=True, rational=r)


def sqrt_int(n: int) -> AlmostHom:
    """sqrt(n) as p -> floor(p*sqrt(n)) = isqrt(p*p*n) for p >= 0, odd below.

    On p, q >= 0 the defect is a floor defect, so in {0, 1}; the odd
    extension adds no new defect values, so cert 1.
    """
    if n < 0:
        raise ValueError(f"sqrt_int of negative integer {n}")
    n = int(n)

    def fn(p: int) -> int:
        r = isqrt(p * p * n)
        return r if p >= 0 else -r

    root = isqrt(n)
    rational = Fraction(root) if root * root == n else None
    return AlmostHom(fn, 1, f"sqrt({n})", floor_exact=True, rational=rational)


def from_oracle(approx: Callable[[Fraction], Fraction], label: str = "oracle") -> AlmostHom:
    """Build a representative from a rational approximation procedure.

    ``approx(eps)`` must return a rational within eps of x.  With
    eps = 1/(2|p|), p*approx(eps) is within 1/2 of p*x, and rounding to the
    nearest integer adds at most 1/2, so |eval(p) - p*x| <= 1.  Then

        d(p, q) = (f(p+q) - (p+q)x) - (f(p) - px) - (f(q) - qx)

    is a sum of three terms of size <= 1, giving cert 3.
    """

    def fn(p: int) -> int:
        if p == 0:
            return 0
        a = approx(Fraction(1, 2 * abs(p)))
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise TypeError(f"oracle {label!r} returned non-rational {a!r}")
        # Fraction.__round__ rounds half to even.
        return round(p * Fraction(a))

    return AlmostHom(fn, 3, label)


# ---------------------------------------------------------------- group/ring

def add(x: AlmostHom, y: AlmostHom) -> AlmostHom:
    rational = (x.rational + y.rational
                if x.rational is not None and y.rational is not None else None)
    return AlmostHom(lambda p: x.eval(p) + y.eval(p), x.cert + y.cert,
                     f"({x.label} + {y.label})", rational=rational)


def neg(x: AlmostHom) -> AlmostHom:
    rational = -x.rational if x.rational is not None else None
    return AlmostHom(lambda p: -x.eval(p), x.cert, f"-{x.label}", rational=rational)


def sub(x: AlmostHom, y: AlmostHom) -> AlmostHom:
    return add(x, neg(y))


def _linear_bound(x: AlmostHom) -> tuple[int, int]:
    """(A, B) with |x(p)| <= A|p| + B for all p."""
    return x.cert + abs(x.eval(1)), 3 * x.cert


def mul(x: AlmostHom, y: AlmostHom) -> AlmostHom:
    """Product as composition p -> x(y(p)).

    With e = d_y(p, q):
        d_{x o y}(p, q) = x(e) + d_x(y(p) + y(q), e) + d_x(y(p), y(q))
    so the defect is at most max{|x(e)| : |e| <= cert(y)} + 2*cert(x).
    """
    if y.cert <= MUL_ENUMERATION_LIMIT:
        peak = max(abs(x.eval(e)) for e in range(-y.cert, y.cert + 1))
    else:
        a, b = _linear_bound(x)
        peak = a * y.cert + b
    rational = (x.rational * y.rational
                if x.rational is not None and y.rational is not None else None)
    return AlmostHom(lambda p: x.eval(y.eval(p)), peak + 2 * x.cert,
                     f"({x.label} * {y.label})", rational=rational)


def defect(x: AlmostHom, p: int, q: int) -> int:
    return x.eval(p + q) - x.eval(p) - x.eval(q)


# ---------------------------------------------------------------- enclosures

def enclose(x: AlmostHom, q: int) -> Interval:
    if q < 1:
        raise ValueError("enclose needs q >= 1")
    v = x.eval(q)
    return Interval(Fraction(v - x.cert, q), Fraction(v + x.cert, q))


def _refine_q(x: AlmostHom, eps, budget: Budget) -> tuple[int, Interval]:
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("refine needs eps > 0")
    q = max(1, ceil_rat(2 * x.cert / eps))
    if q > budget.max_q:
        try:
            best = enclose(x, budget.max_q)
        except BudgetExceeded as exc:
            best = exc.best
        raise BudgetExceeded(
            f"refining {x.label} to width {eps} needs q = {q} > 2^{budget.max_arg_exponent}",
            best)
    return q, enclose(x, q)


def refine(x: AlmostHom, eps, budget: Budget = DEFAULT_BUDGET) -> Interval:
    """An enclosure of x of width <= eps."""
    return _refine_q(x, eps, budget)[1]


class Sign(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1
    INCONCLUSIVE = 0


@dataclass(frozen=True)
class SignResult:
    verdict: Sign
    enclosure: Optional[Interval]
    q: int

    @property
    def provably_zero(self) -> bool:
        """Point enclosure at 0, which only a cert-0 representative can give."""
        return (self.verdict is Sign.INCONCLUSIVE and self.enclosure is not None
                and self.enclosure.lo == 0 == self.enclosure.hi)


def sign(x: AlmostHom, budget: Budget = DEFAULT_BUDGET) -> SignResult:
    """Positive/Negative once an enclosure excludes 0 (q = 1, 2, 4, ...).

    Zero is never reported: no finite set of values pins a real to 0 unless
    cert is 0, and then the result is Inconclusive([0, 0]).
    """
    enc: Optional[Interval] = None
    last_q = 0
    q = 1
    while q <= budget.max_q:
        try:
            enc = enclose(x, q)
        except BudgetExceeded as exc:
            enc = exc.best if enc is None else enc
            break
        last_q = q
        if enc.lo > 0:
            return SignResult(Sign.POSITIVE, enc, q)
        if enc.hi < 0:
            return SignResult(Sign.NEGATIVE, enc, q)
        if x.cert == 0:
            break
        q *= 2
    return SignResult(Sign.INCONCLUSIVE, enc, last_q)


class Order(enum.Enum):
    LESS = -1
    GREATER = 1
    INCONCLUSIVE = 0


@dataclass(frozen=True)
class Comparison:
    verdict: Order
    enclosure: Optional[Interval]   # enclosure of y - x


def compare(x: AlmostHom, y: AlmostHom, budget: Budget = DEFAULT_BUDGET) -> Comparison:
    s = sign(add(y, neg(x)), budget)
    verdict = {Sign.POSITIVE: Order.LESS, Sign.NEGATIVE: Order.GREATER,
               Sign.INCONCLUSIVE: Order.INCONCLUSIVE}[s.verdict]
    return Comparison(verdict, s.enclosure)


# ---------------------------------------------------------------- reciprocal

def _crossing_gallop(f: AlmostHom, p: int, seed: int) -> int:
    """Some n >= 1 with f(n-1) < p <= f(n), found from ``seed``.

    Requires f(0) = 0 < p and f(n) -> +oo.  For non-decreasing f the
    crossing is unique and equals the least n with f(n) >= p.
    """
    hi = max(seed, 1)
    if f.eval(hi) >= p:
        step = 1
        lo = hi - 1
        while lo > 0 and f.eval(lo) >= p:
            hi = lo
            step *= 2
            lo = max(0, hi - step)
    else:
        lo = hi
        step = 1
        hi = lo + 1
        while f.eval(hi) < p:
            lo = hi
            step *= 2
            hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f.eval(mid) >= p:
            hi = mid
        else:
            lo = mid
    return hi


def _least_linear(f: AlmostHom, p: int) -> int:
    n = 0
    while f.eval(n) < p:
        n += 1
    return n


def _reciprocal_of_positive(f: AlmostHom, lam: Fraction, search: str,
                            budget: Budget) -> AlmostHom:
    """g(p) = min{n >= 0 : f(n) >= p} for p >= 0, odd below.

    lam is a rational with 0 < lam <= x.  With C = cert(f) and
    K = 2|f(1)| + 4C bounding the f(r - p - q) terms of the inverse
    construction, |d_g| <= ceil((K + C)/lam) + 2.  Only the crossing
    property f(g(p) - 1) < p <= f(g(p)) enters that argument.
    """
    if f.eval(0) != 0:
        shift = f.eval(0)
        base = f
        f = AlmostHom(lambda p: base.eval(p) - shift, base.cert + abs(shift), base.label)
    c = f.cert
    k = 2 * abs(f.eval(1)) + 4 * c
    cert = ceil_rat((k + c) / lam) + 2
    # Any seed gives the same crossing for monotone f; a sharp estimate of x
    # keeps the gallop short, which matters when reciprocals nest.
    try:
        estimate = enclose(f, budget.max_q).midpoint
    except BudgetExceeded:
        estimate = lam
    if estimate < lam:
        estimate = lam
    num, den = estimate.numerator, estimate.denominator

    def positive_part(p: int) -> int:
        if search == "linear":
            return _least_linear(f, p)
        return _crossing_gallop(f, p, ceil_div(p * den, num))

    def g(p: int) -> int:
        if p == 0:
            return 0
        if p < 0:
            return -positive_part(-p)
        return positive_part(p)

    rational = 1 / f.rational if f.rational else None
    return AlmostHom(g, cert, f"1/{f.label}", rational=rational)


def _lower_bound(x: AlmostHom, s: SignResult, budget: Budget) -> Fraction:
    lam = s.enclosure.lo
    # One tighter look so that lam >= 3x/4; cert(recip) scales like 1/lam.
    q = max(s.q, ceil_rat(8 * x.cert / lam))
    if q <= budget.max_q and q != s.q:
        try:
            lam = max(lam, enclose(x, q).lo)
        except BudgetExceeded:
            pass
    return lam


def recip(x: AlmostHom, budget: Budget = DEFAULT_BUDGET, *, search: str = "gallop") -> AlmostHom:
    """Multiplicative inverse; the sign of x must be established within budget.

    ``search="linear"`` scans n = 0, 1, 2, ... and is the reference the
    galloping search is tested against.
    """
    if search not in ("gallop", "linear"):
        raise ValueError(f"unknown search {search!r}")
    s = sign(x, budget)
    if s.verdict is Sign.INCONCLUSIVE:
        raise SignInconclusive("cannot invert: sign not established within budget",
                               s.enclosure)
    if s.verdict is Sign.POSITIVE:
        return _reciprocal_of_positive(x, _lower_bound(x, s, budget), search, budget)
    nx = neg(x)
    flipped = SignResult(Sign.POSITIVE, -s.enclosure, s.q)
    inv = _reciprocal_of_positive(nx, _lower_bound(nx, flipped, budget), search, budget)
    out = neg(inv)
    out.label = f"1/{x.label}"
    return out


def div(x: AlmostHom, y: AlmostHom, budget: Budget = DEFAULT_BUDGET) -> AlmostHom:
    return mul(x, recip(y, budget))


# ---------------------------------------------------------------- floor

@dataclass(frozen=True)
class FloorResult:
    value: Optional[int]            # None means inconclusive
    enclosure: Optional[Interval]

    @property
    def conclusive(self) -> bool:
        return self.value is not None


def floor_of(x: AlmostHom, budget: Budget = DEFAULT_BUDGET) -> FloorResult:
    """floor(x) once an enclosure fits inside some [n, n+1).

    When x is an integer with cert > 0 this never happens; the boundary case
    is undecidable and the result is inconclusive.
    """
    enc: Optional[Interval] = None
    q = 1
    while q <= budget.max_q:
        try:
            enc = enclose(x, q)
        except BudgetExceeded as exc:
            enc = exc.best if enc is None else enc
            break
        n = floor_rat(enc.lo)
        if enc.hi < n + 1:
            return FloorResult(n, enc)
        if x.cert == 0:
            break
        q *= 2
    return FloorResult(None, enc)


# ---------------------------------------------------------------- normal forms

def canonicalize(x: AlmostHom, budget: Budget = DEFAULT_BUDGET) -> AlmostHom:
    """Same real, cert 3, with |eval(p) - p*x| <= 1 for every p.

    Each evaluation refines x; a BudgetExceeded surfaces at evaluation time.
    """
    def approx(eps: Fraction) -> Fraction:
        return refine(x, eps, budget).midpoint

    out = from_oracle(approx, f"canon({x.label})")
    out.rational = x.rational
    return out


def sup_finite(xs: Sequence[AlmostHom]) -> AlmostHom:
    """Supremum of a finite family of floor-exact reals.

    For p >= 0 the value is max_i floor(p*x_i) = floor(p * max_i x_i), so the
    result is itself floor-exact.  Taking the pointwise max of arbitrary
    representatives would be wrong (see lemmas.street_family).
    """
    xs = list(xs)
    if not xs:
        raise ValueError("sup_finite of an empty family")
    for x in xs:
        if not x.floor_exact:
            raise ValueError(f"sup_finite needs floor-exact inputs; {x.label} is not")

    def fn(p: int) -> int:
        if p < 0:
            return -max(x.eval(-p) for x in xs)
        return max(x.eval(p) for x in xs)

    rationals = [x.rational for x in xs]
    rational = max(rationals) if all(r is not None for r in rationals) else None
    return AlmostHom(fn, 1 + max(x.cert for x in xs),
                     "sup(" + ", ".join(x.label for x in xs) + ")",
                     floor_exact=True, rational=rational)


def nu(x: AlmostHom, count: int) -> list[int]:
    """The colonnade values floor(x), floor(2x), ... of a floor-exact real."""
    if not x.floor_exact:
        raise ValueError(f"{x.label} is not floor-exact")
    return [x.eval(p) for p in range(1, count + 1)]


# ---------------------------------------------------------------- printing

def _format_scaled(k: int, n: int) -> str:
    whole, frac = divmod(abs(k), 10 ** n)
    return f"{'-' if k < 0 else ''}{whole}.{frac:0{n}d}"


def _trunc_scaled(v: Fraction, scale: int) -> int:
    return math.trunc(v * scale)


def digits(x: AlmostHom, n: int, budget: Budget = DEFAULT_BUDGET, *,
           use_exact: bool = True) -> str:
    """Decimal string d with |x - d| <= 10**-n.

    The digits are the truncation toward zero of x when the enclosure pins
    it; otherwise the printed value is a grid point inside the enclosure and
    the result is suffixed with "±1ulp".  Known rational values are printed
    exactly unless ``use_exact`` is False.
    """
    if n < 1:
        raise ValueError("digits needs n >= 1")
    scale = 10 ** n
    if use_exact and x.rational is not None:
        return _format_scaled(_trunc_scaled(x.rational, scale), n)

    q, enc = _refine_q(x, Fraction(1, 2 * scale), budget)

    def pinned(i: Interval) -> bool:
        return _trunc_scaled(i.lo, scale) == _trunc_scaled(i.hi, scale)

    for factor in (10 ** 3, 10 ** 6, 10 ** 9):
        if pinned(enc) or q * factor > budget.max_q:
            break
        try:
            enc = enc.intersect(enclose(x, q * factor))
        except BudgetExceeded:
            break
    if pinned(enc):
        return _format_scaled(_trunc_scaled(enc.lo, scale), n)
    # Width < 1/scale, so exactly one grid point lies inside.
    if enc.lo >= 0:
        k = floor_rat(enc.hi * scale)
    else:
        k = ceil_rat(enc.lo * scale)
    return _format_scaled(k, n) + "±1ulp"


def parse_digits(text: str) -> Fraction:
    """Inverse of digits() output, marker stripped."""
    return Fraction(text.removesuffix("±1ulp"))

