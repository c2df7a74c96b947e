import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eudoxus import core
from eudoxus.lemmas import certificate_audit
from eudoxus.multidim import (IntervalMatrix, MultiAH, PartialRecovery, add_multi,
                              compose_after_linear, compose_before_linear,
                              coordinate_section, format_interval_matrix, format_matrix,
                              from_int_matrix, from_matrix_noisy, multi_defect,
                              parse_interval_matrix, parse_matrix, recover_matrix,
                              split_direct_sum)

EPS = Fraction(1, 100)
M = [[2, 0], [1, 3]]


def matrix_product(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def sampled_max_defect(f, n=3000, r=1000, seed=0):
    rng = random.Random(seed)
    worst = 0
    for _ in range(n):
        u = tuple(rng.randint(-r, r) for _ in range(f.dim_in))
        v = tuple(rng.randint(-r, r) for _ in range(f.dim_in))
        worst = max(worst, multi_defect(f, u, v))
    return worst


def test_identity_sections():
    ident = from_int_matrix([[1, 0], [0, 1]])
    s00, s01 = coordinate_section(ident, 0, 0), coordinate_section(ident, 0, 1)
    one = core.eu_embed(1)
    assert all(s00.eval(p) == one.eval(p) for p in range(-50, 51))
    assert all(s01.eval(p) == 0 for p in range(-50, 51))
    with pytest.raises(IndexError):
        coordinate_section(ident, 2, 0)


def test_noisy_section_encloses_entry():
    f = from_matrix_noisy(M, 5, seed=1)
    for i in range(2):
        for j in range(2):
            s = coordinate_section(f, j, i)
            assert s.cert == f.cert
            assert M[i][j] in core.refine(s, EPS)


def test_recover_exact_matrix_points():
    im = recover_matrix(from_int_matrix(M), EPS)
    assert all(e.width == 0 for r in im.rows for e in r)
    assert [[e.lo for e in r] for r in im.rows] == M


def test_recover_noisy_matrix_contains_entries():
    im = recover_matrix(from_matrix_noisy(M, 5, seed=0), EPS)
    assert all(all(r) for r in im.contains(M))
    assert all(e.width <= EPS for r in im.rows for e in r)


def test_one_by_one_reduces_to_enclose():
    f = from_matrix_noisy([[Fraction(7, 2)]], 1, seed=4)
    im = recover_matrix(f, EPS)
    assert im.rows[0][0] == core.refine(coordinate_section(f, 0, 0), EPS)
    assert Fraction(7, 2) in im.rows[0][0]


def test_noisy_lift_examples():
    f = from_matrix_noisy([[1, 2], [3, 4], [5, 6]], 0)
    assert f.eval((1, -1)) == (-1, -1, -1)
    h = from_matrix_noisy([[Fraction(1, 2)]], 0)
    assert h.eval((3,)) in ((1,), (2,))
    g = from_matrix_noisy([[Fraction(1, 3), 2], [Fraction(-5, 7), 1]], 5, seed=0)
    assert g.cert == 3 * (1 + 2 * 5)
    assert sampled_max_defect(g, n=10 ** 4) <= g.cert


def test_noise_is_deterministic():
    a = from_matrix_noisy(M, 5, seed=11)
    b = from_matrix_noisy(M, 5, seed=11)
    c = from_matrix_noisy(M, 5, seed=12)
    vs = [(x, y) for x in range(-5, 6) for y in range(-5, 6)]
    assert [a.eval(v) for v in vs] == [b.eval(v) for v in vs]
    assert [a.eval(v) for v in vs] != [c.eval(v) for v in vs]


def test_split_direct_sum():
    exact = from_int_matrix([[1, 2, 3], [4, 5, 6]])
    _, _, worst = split_direct_sum(exact, 1)
    assert worst == 0
    f = from_matrix_noisy([[1, Fraction(1, 2), 3], [Fraction(-2, 3), 5, 6]], 5, seed=2)
    f1, f2, worst = split_direct_sum(f, 2)
    assert worst <= f.cert
    assert (f1.dim_in, f2.dim_in) == (2, 1)
    whole = recover_matrix(f, EPS)
    parts = recover_matrix(f1, EPS).hconcat(recover_matrix(f2, EPS))
    truth = [[1, Fraction(1, 2), 3], [Fraction(-2, 3), 5, 6]]
    assert all(all(r) for r in parts.contains(truth))
    assert all(all(r) for r in whole.contains(truth))
    for bad in (0, 3):
        with pytest.raises(ValueError):
            split_direct_sum(f, bad)


def test_group_structure():
    f = from_matrix_noisy(M, 3, seed=5)
    g = from_matrix_noisy([[Fraction(1, 2), -1], [0, Fraction(7, 3)]], 2, seed=6)
    h = add_multi(f, g)
    assert h.cert == f.cert + g.cert
    assert sampled_max_defect(h) <= h.cert
    im = recover_matrix(h, EPS)
    assert all(all(r) for r in im.contains([[Fraction(5, 2), -1], [1, Fraction(16, 3)]]))


def test_composition_with_linear_maps():
    truth = [[Fraction(1, 3), 2], [Fraction(-5, 4), Fraction(1, 2)]]
    f = from_matrix_noisy(truth, 5, seed=9)
    a = [[1, -2], [3, 1], [0, 2]]
    left = compose_after_linear(a, f)
    im = recover_matrix(left, EPS)
    assert all(all(r) for r in im.contains(matrix_product(a, truth)))
    assert sampled_max_defect(left) <= left.cert
    b = [[2, 1, 0], [-1, 0, 1]]
    right = compose_before_linear(f, b)
    im = recover_matrix(right, EPS)
    assert all(all(r) for r in im.contains(matrix_product(truth, b)))


def test_partial_recovery_on_budget():
    f = from_matrix_noisy(M, 5)
    with pytest.raises(PartialRecovery) as info:
        recover_matrix(f, Fraction(1, 10 ** 9), core.Budget(8))
    assert info.value.partial.shape == (2, 2)


def test_sections_are_audited_almost_homomorphisms():
    f = from_matrix_noisy([[Fraction(3, 7), -2, 1]], 4, seed=3)
    for j in range(3):
        assert not certificate_audit(coordinate_section(f, j, 0), 1000, 3000).violated


def test_multiah_shape_checks():
    bad = MultiAH(2, 2, lambda v: (1,), 0)
    with pytest.raises(ValueError):
        bad.eval((0, 0))
    with pytest.raises(ValueError):
        from_int_matrix(M).eval((1, 2, 3))


def test_grid_format_round_trip():
    mat = [[Fraction(1, 2), 3], [Fraction(-7, 3), 0]]
    text = format_matrix(mat)
    assert text.splitlines()[0] == "2 2"
    assert parse_matrix(text) == mat
    im = recover_matrix(from_matrix_noisy(mat, 1), EPS)
    back = parse_interval_matrix(format_interval_matrix(im))
    assert back == im
    assert format_interval_matrix(IntervalMatrix(((core.Interval(0, 1),),))) == "1 1\n[0/1,1/1]\n"


@pytest.mark.parametrize("text", ["", "2\n1 2\n", "2 2\n1 2\n", "1 2\n1 x\n", "1 1\n1/0\n"])
def test_grid_format_errors(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_matrix(text)


@settings(max_examples=15)
@given(st.lists(st.lists(st.fractions(min_value=-19, max_value=19, max_denominator=9),
                         min_size=2, max_size=2), min_size=2, max_size=2),
       st.integers(0, 6), st.integers(0, 100))
def test_recovery_property(mat, k, seed):
    im = recover_matrix(from_matrix_noisy(mat, k, seed), Fraction(1, 20))
    assert all(all(r) for r in im.contains(mat))
