from fractions import Fraction

import hypothesis
import pytest

from eudoxus import core
from eudoxus.lemmas import street_family

hypothesis.settings.register_profile("ci", deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("ci")


def bisect_sqrt(n, eps):
    """Rational within eps of sqrt(n), by plain interval halving (test oracle)."""
    lo, hi = Fraction(0), Fraction(max(1, n))
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def constructed_reals():
    """Ten reals built along different constructor paths."""
    return [
        core.eu_embed(7),
        core.from_rational(Fraction(-22, 7)),
        core.sqrt_int(2),
        core.add(core.sqrt_int(3), core.from_rational(Fraction(1, 3))),
        core.mul(core.sqrt_int(2), core.sqrt_int(3)),
        core.recip(core.sqrt_int(5)),
        core.canonicalize(core.sqrt_int(7)),
        core.sup_finite([core.from_rational(Fraction(7, 5)), core.sqrt_int(2)]),
        core.neg(core.mul(core.from_rational(Fraction(3, 7)), core.sqrt_int(11))),
        street_family(4),
    ]


@pytest.fixture
def reals():
    return constructed_reals()
