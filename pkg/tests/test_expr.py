from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eudoxus import core
from eudoxus.expr import (Add, Div, EvaluationError, IntLit, Mul, Neg, ParseError, RatLit,
                          Sqrt, Sub, evaluate, evaluate_text, exact_value, parse, pretty,
                          sqrt_positive)
from eudoxus.lemmas import certificate_audit

from conftest import bisect_sqrt


def test_precedence():
    assert parse("1 + 2 * 3") == Add(IntLit(1), Mul(IntLit(2), IntLit(3)))
    assert parse("1 - 2 - 3") == Sub(Sub(IntLit(1), IntLit(2)), IntLit(3))
    assert parse("-(1 + 2)") == Neg(Add(IntLit(1), IntLit(2)))


def test_rational_literal_versus_division():
    assert parse("sqrt(2) - 3/2") == Sub(Sqrt(IntLit(2)), RatLit(Fraction(3, 2)))
    assert parse("3/(2)") == Div(IntLit(3), IntLit(2))
    assert parse("1/0") == Div(IntLit(1), IntLit(0))
    assert parse("6/4") == RatLit(Fraction(3, 2))


@pytest.mark.parametrize("text,offset", [
    ("(1 +", 4), ("", 0), ("1 + 2)", 5), ("sqrt 2", 5), ("2 $ 3", 2), ("1 2", 2),
    ("é+", 0), ("(é", 1)])
def test_parse_errors_report_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert str(info.value).endswith(f"at offset {offset}")


def test_parse_error_messages():
    with pytest.raises(ParseError, match="unexpected end of input at offset 4"):
        parse("(1 +")
    with pytest.raises(ParseError, match="empty input"):
        parse("   ")
    with pytest.raises(ParseError, match="unbalanced"):
        parse("1)")


leaves = st.one_of(
    st.integers(0, 10 ** 6).map(IntLit),
    st.builds(lambda n, d: RatLit(Fraction(n, d)), st.integers(0, 999), st.integers(1, 999)))


def _extend(children):
    return st.one_of(
        children.map(Sqrt), children.map(Neg),
        *(st.builds(cls, children, children) for cls in (Add, Sub, Mul, Div)))


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=1000)
@given(trees)
def test_pretty_parse_round_trip(e):
    assert parse(pretty(e)) == e


def test_pretty_examples():
    assert pretty(parse("1 - (2 - 3)")) == "1 - (2 - 3)"
    assert pretty(parse("1 / (2/3)")) == "1 / (2/3)"
    assert pretty(parse("-(1 * 2)")) == "-(1 * 2)"


def test_evaluate_integer_sum():
    x = evaluate_text("2 + 3")
    assert 5 in core.enclose(x, 1000)
    assert x.cert == 0


def test_sqrt_product_digits():
    text = core.digits(evaluate_text("sqrt(2)*sqrt(2)"), 6)
    assert text in ("2.000000", "1.999999±1ulp", "2.000000±1ulp")
    assert abs(core.parse_digits(text) - 2) <= Fraction(1, 10 ** 6)


@pytest.mark.parametrize("text", ["1/(2-2)", "1/0", "sqrt(1-1)", "sqrt(0-3)", "sqrt(-(2))"])
def test_evaluation_errors(text):
    with pytest.raises(EvaluationError):
        evaluate_text(text)


def test_exact_value():
    assert exact_value(parse("1/3 + 1/6")) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        exact_value(parse("1/(2-2)"))


@pytest.mark.parametrize("text", ["1/3 + 1/6", "7/3 * (2 - 5/4)", "-(22/7) / 3", "1 / (1/7 - 1/8)"])
def test_rational_expressions_enclose_exact_value(text):
    x = evaluate_text(text)
    v = exact_value(parse(text))
    enc = core.refine(x, Fraction(1, 10 ** 9))
    assert v in enc


@pytest.mark.parametrize("n,d", [(2, 1), (1, 3), (22, 7), (10 ** 6 + 3, 17)])
def test_sqrt_positive_against_bisection(n, d):
    r = Fraction(n, d)
    x = sqrt_positive(core.from_rational(r))
    assert x.cert == 3
    enc = core.refine(x, Fraction(1, 10 ** 12))
    ref = bisect_sqrt(r, Fraction(1, 10 ** 15))
    assert enc.lo - Fraction(1, 10 ** 15) <= ref <= enc.hi + Fraction(1, 10 ** 15)


def test_nested_sqrt():
    x = evaluate_text("sqrt(sqrt(16))")
    assert 2 in core.refine(x, Fraction(1, 10 ** 9))
    y = evaluate_text("sqrt(2 + sqrt(2))")
    enc = core.refine(y, Fraction(1, 10 ** 9))
    # sqrt(2 + sqrt(2)) = 1.8477590650225735...
    assert enc.lo < Fraction(18477590651, 10 ** 10) and enc.hi > Fraction(18477590650, 10 ** 10)


@pytest.mark.parametrize("text", ["sqrt(2)*sqrt(3)", "1/sqrt(5) - 2/3", "sqrt(3/7 + 1) * 9/4",
                                  "(sqrt(2) + 1) / (sqrt(3) - 1)"])
def test_evaluated_expressions_pass_audit(text):
    r = certificate_audit(evaluate_text(text), 1000, 3000)
    assert not r.violated


def test_evaluate_sqrt_literal_uses_integer_root():
    x = evaluate(parse("sqrt(9)"))
    assert x.floor_exact and x.eval(10) == 30
