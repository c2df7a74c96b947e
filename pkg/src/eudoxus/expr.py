"""A small expression language over exact reals.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | INT | INT '/' INT | 'sqrt' '(' expr ')' | '(' expr ')'

``INT '/' INT`` with two adjacent integer literals is a rational literal, so
``3/2`` is the exact number 3/2 while ``3/(2)`` and ``x/2`` are divisions.
A zero denominator is parsed as a division so that it fails at evaluation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import core
from .core import DEFAULT_BUDGET, AlmostHom, Budget, EudoxusError, Sign
from .numeric import isqrt


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class EvaluationError(EudoxusError):
    pass


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class RatLit:
    value: Fraction


@dataclass(frozen=True)
class Sqrt:
    arg: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


Expr = Union[IntLit, RatLit, Sqrt, Neg, Add, Sub, Mul, Div]

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, text, byte offset) triples, ending with an 'eof' token."""
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        start = m.start(m.lastindex)
        kind = ("int", "sqrt", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), _byte_offset(text, start)))
        pos = m.end()
    tokens.append(("eof", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        tok = self.peek()
        if tok[1] != text or tok[0] == "eof":
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {text!r}, found {what}", tok[2])
        return self.take()

    def parse(self) -> Expr:
        if self.peek()[0] == "eof":
            raise ParseError("empty input", self.peek()[2])
        node = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            if tok[1] == ")":
                raise ParseError("unbalanced ')'", tok[2])
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def factor(self) -> Expr:
        kind, text, offset = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Neg(self.factor())
        if kind == "int":
            self.take()
            nxt, after = self.peek(), self.peek(1)
            if nxt[1] == "/" and after[0] == "int" and int(after[1]) != 0:
                self.take()
                self.take()
                return RatLit(Fraction(int(text), int(after[1])))
            return IntLit(int(text))
        if kind == "sqrt":
            self.take()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Sqrt(inner)
        if kind == "op" and text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "eof":
            raise ParseError("unexpected end of input", offset)
        raise ParseError(f"unexpected token {text!r}", offset)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------- printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2}


def pretty(e: Expr) -> str:
    """Render e so that parse(pretty(e)) == e."""
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, RatLit):
        return f"{e.value.numerator}/{e.value.denominator}"
    if isinstance(e, Sqrt):
        return f"sqrt({pretty(e.arg)})"
    if isinstance(e, Neg):
        inner = pretty(e.arg)
        if isinstance(e.arg, (Add, Sub, Mul, Div)):
            inner = f"({inner})"
        return f"-{inner}"
    prec = _PREC[type(e)]
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    left = pretty(e.left)
    if _PREC.get(type(e.left), 3) < prec:
        left = f"({left})"
    right = pretty(e.right)
    # Left-associative: an equal-precedence right operand needs parentheses,
    # and a right operand starting with a digit would fuse with "/" into a
    # rational literal.
    if _PREC.get(type(e.right), 3) <= prec or (op == "/" and right[0].isdigit()):
        right = f"({right})"
    return f"{left} {op} {right}"


# ---------------------------------------------------------------- evaluation

def exact_value(e: Expr) -> Fraction:
    """Exact rational value of a sqrt-free expression (ZeroDivisionError on /0)."""
    if isinstance(e, IntLit):
        return Fraction(e.value)
    if isinstance(e, RatLit):
        return e.value
    if isinstance(e, Neg):
        return -exact_value(e.arg)
    if isinstance(e, Sqrt):
        raise ValueError("sqrt has no exact rational value in general")
    a, b = exact_value(e.left), exact_value(e.right)
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    return a / b


def _sqrt_bounds(r: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """Rationals lo <= sqrt(r) < hi with hi - lo <= 2**-k (r >= 0)."""
    # sqrt(n/d) = sqrt(n*d)/d, scaled by 2**k before taking the integer root.
    den = r.denominator << k
    lo = isqrt(r.numerator * r.denominator * 4 ** k)
    return Fraction(lo, den), Fraction(lo + 1, den)


def sqrt_positive(x: AlmostHom, budget: Budget = DEFAULT_BUDGET) -> AlmostHom:
    """sqrt of a real certified positive within budget, via from_oracle."""
    s = core.sign(x, budget)
    if s.verdict is Sign.NEGATIVE:
        raise EvaluationError(f"sqrt of negative operand {x.label}")
    if s.verdict is not Sign.POSITIVE:
        raise EvaluationError(f"sqrt: sign of operand {x.label} is inconclusive")
    lam = s.enclosure.lo
    # 0 < root_floor <= sqrt(x); converts operand width into root width via
    # sqrt(b) - sqrt(a) = (b - a)/(sqrt(a) + sqrt(b)).
    root_floor = _sqrt_bounds(lam, 0)[0]

    def approx(eps: Fraction) -> Fraction:
        enc = core.refine(x, eps * root_floor, budget)
        k = 1
        while Fraction(1, 1 << k) > eps / 2:
            k += 1
        lo = _sqrt_bounds(max(enc.lo, lam), k)[0]
        hi = _sqrt_bounds(enc.hi, k)[1]
        return (lo + hi) / 2

    return core.from_oracle(approx, f"sqrt({x.label})")


def evaluate(e: Expr, budget: Budget = DEFAULT_BUDGET) -> AlmostHom:
    if isinstance(e, IntLit):
        return core.eu_embed(e.value)
    if isinstance(e, RatLit):
        return core.from_rational(e.value)
    if isinstance(e, Neg):
        return core.neg(evaluate(e.arg, budget))
    if isinstance(e, Sqrt):
        if isinstance(e.arg, IntLit):
            return core.sqrt_int(e.arg.value)
        return sqrt_positive(evaluate(e.arg, budget), budget)
    a = evaluate(e.left, budget)
    b = evaluate(e.right, budget)
    if isinstance(e, Add):
        return core.add(a, b)
    if isinstance(e, Sub):
        return core.sub(a, b)
    if isinstance(e, Mul):
        return core.mul(a, b)
    try:
        return core.mul(a, core.recip(b, budget))
    except core.SignInconclusive as exc:
        raise EvaluationError(f"division: divisor sign inconclusive ({b.label})") from exc


def evaluate_text(text: str, budget: Budget = DEFAULT_BUDGET) -> AlmostHom:
    return evaluate(parse(text), budget)
