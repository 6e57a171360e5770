from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import iroot_exact, rational_power
from powertower import (
    QQTag,
    curve_rational_point,
    format_rational,
    integer_nth_root,
    is_curve_pair,
    is_tower_fix,
    parse_rational,
    qq_nature,
    rational_nth_root,
    tower_fix_rational_solutions,
)

F = Fraction


@pytest.mark.parametrize("n, k, root", [(27, 3, 3), (16, 4, 2), (10, 2, None), (0, 5, 0), (1, 9, 1), (2**200, 8, 2**25)])
def test_integer_nth_root_examples(n, k, root):
    assert integer_nth_root(n, k) == root


@given(st.integers(0, 10**40), st.integers(1, 12))
def test_integer_nth_root_matches_gmpy2(n, k):
    assert integer_nth_root(n, k) == iroot_exact(n, k)


@given(st.integers(0, 10**12), st.integers(1, 9))
def test_integer_nth_root_of_perfect_powers(r, k):
    assert integer_nth_root(r**k, k) == r


def test_integer_nth_root_rejects_bad_input():
    with pytest.raises(ValueError):
        integer_nth_root(-8, 3)
    with pytest.raises(ValueError):
        integer_nth_root(8, 0)


@pytest.mark.parametrize("q, k, root", [(F(27, 8), 3, F(3, 2)), (F(2), 2, None), (F(256, 81), 4, F(4, 3))])
def test_rational_nth_root_examples(q, k, root):
    assert rational_nth_root(q, k) == root


def test_rational_nth_root_needs_positive():
    with pytest.raises(ValueError):
        rational_nth_root(F(-1, 8), 3)


@pytest.mark.parametrize(
    "q, tag, value",
    [
        (F(3), QQTag.RATIONAL_VALUE, F(27)),
        (F(1, 2), QQTag.IRRATIONAL_REAL, None),
        (F(-1, 2), QQTag.NON_REAL, None),
        (F(-2), QQTag.RATIONAL_VALUE, F(1, 4)),
        (F(-1, 3), QQTag.IRRATIONAL_REAL, None),
        (F(1), QQTag.RATIONAL_VALUE, F(1)),
    ],
)
def test_qq_nature_examples(q, tag, value):
    nat = qq_nature(q)
    assert nat.tag is tag and nat.value == value


def test_qq_nature_zero_is_an_error():
    with pytest.raises(ValueError):
        qq_nature(0)


@given(st.fractions(min_value=F(-50), max_value=F(50), max_denominator=60).filter(lambda q: q != 0))
def test_qq_rational_iff_integer(q):
    assert (qq_nature(q).tag is QQTag.RATIONAL_VALUE) == (q.denominator == 1)
    if q > 0:
        assert (rational_power(q, q) is not None) == (q.denominator == 1)


@pytest.mark.parametrize("n, pair", [(1, (F(2), F(4))), (2, (F(9, 4), F(27, 8))), (3, (F(64, 27), F(256, 81)))])
def test_curve_rational_point_examples(n, pair):
    assert curve_rational_point(n) == pair


def test_curve_points_satisfy_the_equation():
    import mpmath

    ctx = mpmath.MPContext()
    ctx.prec = 200
    for n in range(1, 51):
        a1, a2 = (ctx.mpf(v.numerator) / v.denominator for v in curve_rational_point(n))
        assert a1 < a2
        assert abs(a2 * ctx.log(a1) - a1 * ctx.log(a2)) < ctx.mpf(2) ** -180


@pytest.mark.parametrize("a1, a2, n", [(F(2), F(4), 1), (F(9, 4), F(27, 8), 2), (F(2), F(3), None)])
def test_is_curve_pair_examples(a1, a2, n):
    assert is_curve_pair(a1, a2) == n


def test_is_curve_pair_order():
    with pytest.raises(ValueError):
        is_curve_pair(F(4), F(2))


@pytest.mark.parametrize(
    "q, sols",
    [(F(1, 16), {F(1, 4), F(1, 2)}), (F(1, 27), {F(1, 3)}), (F(1, 2), set()), (F(1), {F(1)}), (F(1, 4), {F(1, 2)})],
)
def test_tower_fix_examples(q, sols):
    assert tower_fix_rational_solutions(q) == sols


@pytest.mark.parametrize("q, q1, ok", [(F(1, 16), F(1, 2), True), (F(1, 16), F(1, 3), False), (F(1, 4), F(1, 2), True)])
def test_is_tower_fix_examples(q, q1, ok):
    assert is_tower_fix(q, q1) is ok


def test_tower_fix_rejects_nonpositive():
    with pytest.raises(ValueError):
        tower_fix_rational_solutions(F(0))
    with pytest.raises(ValueError):
        is_tower_fix(F(1, 4), F(-1, 2))


def test_tower_fix_family_is_exact():
    for n in range(1, 30):
        q = F(1, n**n)
        for q1 in tower_fix_rational_solutions(q):
            w = rational_power(q, q1)
            assert w is not None and rational_power(q, w) == q1


@pytest.mark.parametrize("text, q", [("3/4", F(3, 4)), ("-6/8", F(-3, 4)), ("7", F(7)), (" -2 ", F(-2))])
def test_parse_and_format(text, q):
    assert parse_rational(text) == q
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("bad", ["", "1/0", "a", "1.5", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)
