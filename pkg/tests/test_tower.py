from fractions import Fraction

import pytest

import reference as ref
from powertower import (
    DomainError,
    Precision,
    TowerMode,
    TowerValue,
    g,
    parse_expr,
    tower_h,
    tower_iterate_raw,
    tower_odd_even,
    two_step_fixed_points,
)
from powertower.tower import TowerOverflowError

P = Precision(128)
CTX = P.ctx
TOL = 10 * P.band


def near(a, b, tol=TOL):
    return abs(CTX.mpf(a.value if hasattr(a, "value") else a) - b) <= tol


def grid(lo, hi, n):
    return [lo + (hi - lo) * (k + 0.5) / n for k in range(n)]


@pytest.mark.parametrize(
    "expr, expected",
    [
        ("1/4", CTX.mpf(1) / 2),
        ("sqrt(2)", CTX.mpf(2)),
        ("e^(1/3)", ref.TOWER_E_THIRD),
        ("1/2", ref.TOWER_HALF),
        ("(sqrt(2)+1)/2", ref.TOWER_SURD),
    ],
)
def test_tower_h_examples(expr, expected):
    tv = tower_h(parse_expr(expr), P)
    assert tv.mode is TowerMode.CONVERGED_H
    if isinstance(expected, str):
        assert ref.within_last_place(tv.h, expected)
    else:
        assert near(tv.h, expected)


def test_tower_h_out_of_domain():
    tv = tower_h(parse_expr("3/2"), P)
    assert tv.mode is TowerMode.OUT_OF_DOMAIN and tv.h is None
    with pytest.raises(DomainError):
        tower_h(0, P)


def test_tower_h_below_domain_splits():
    assert tower_h(Fraction(1, 17), P).mode is TowerMode.SPLIT_ODD_EVEN


def test_endpoints():
    low, high = CTX.exp(-CTX.e), CTX.exp(1 / CTX.e)
    a, b = tower_h(low, P), tower_h(high, P)
    assert near(a.h, CTX.exp(-1)) and near(b.h, CTX.e)
    assert a.boundary and b.boundary
    assert not tower_h(Fraction(1, 2), P).boundary


def test_tower_h_is_increasing_and_solves_fixed_point():
    low, high = CTX.exp(-CTX.e), CTX.exp(1 / CTX.e)
    xs = grid(low, high, 100)
    hs = [tower_h(x, P).h.value for x in xs]
    assert all(a < b for a, b in zip(hs, hs[1:]))
    for x, h in zip(xs, hs):
        assert near(g(h, P), x)
        assert abs(CTX.power(x, h) - h) <= TOL


def test_h_of_g():
    for x in grid(1 / CTX.e, CTX.e, 100):
        assert near(tower_h(g(x, P), P).h, x)
    for x in grid(CTX.e, CTX.mpf(4), 20):
        assert tower_h(g(x, P), P).h.value < x


def test_two_step_fixed_points_examples():
    r = two_step_fixed_points(Fraction(1, 16), P)
    assert len(r) == 3
    assert near(r[0], CTX.mpf(1) / 4) and near(r[2], CTX.mpf(1) / 2)
    assert CTX.mpf(1) / 4 < r[1].value < CTX.mpf(1) / 2
    r = two_step_fixed_points(Fraction(1, 4), P)
    assert len(r) == 1 and near(r[0], CTX.mpf(1) / 2)
    r = two_step_fixed_points(Fraction(1, 17), P)
    assert ref.within_last_place(r[0], ref.ODD_EVEN_17[0])
    assert ref.within_last_place(r[-1], ref.ODD_EVEN_17[1])


def test_two_step_close_to_threshold():
    x = CTX.exp(-CTX.e) * (1 - CTX.mpf(10) ** -6)
    r = two_step_fixed_points(x, P)
    assert len(r) == 3 and r[0] < r[1] < r[2]


def test_odd_even_examples():
    tv = tower_odd_even(Fraction(1, 16), P)
    assert near(tv.h_odd, CTX.mpf(1) / 4) and near(tv.h_even, CTX.mpf(1) / 2)
    tv = tower_odd_even(Fraction(1, 5), P)
    assert tv.mode is TowerMode.CONVERGED_H and tv.h_odd == tv.h_even == tv.h
    it = tower_odd_even(Fraction(1, 5), P, "iteration")
    assert near(it.h, tv.h.value)
    with pytest.raises(DomainError):
        tower_odd_even(2, P)


def test_odd_even_relations_below_threshold():
    for x in grid(CTX.mpf("0.0005"), CTX.exp(-CTX.e), 50):
        tv = tower_odd_even(x, P)
        ho, he = tv.h_odd.value, tv.h_even.value
        assert ho < he
        assert abs(CTX.power(x, ho) - he) <= TOL
        assert abs(CTX.power(x, he) - ho) <= TOL
        # both are fixed points of y -> x**(x**y)
        for y in (ho, he):
            assert abs(CTX.power(x, CTX.power(x, y)) - y) <= TOL


@pytest.mark.parametrize("x", [Fraction(1, 16), Fraction(1, 17), Fraction(1, 100), Fraction(1, 3), Fraction(1, 2), Fraction(5, 4)])
def test_iteration_agrees_with_fixed_point(x):
    fp = tower_odd_even(x, P)
    it = tower_odd_even(x, P, "iteration")
    assert it.method == "iteration" and it.converged and it.iterations > 0
    assert near(it.h_odd, fp.h_odd.value) and near(it.h_even, fp.h_even.value)


def test_iterate_raw_examples():
    assert near(tower_iterate_raw(2, 3, P), CTX.mpf(16))
    assert near(tower_iterate_raw(CTX.sqrt(2), 1, P), CTX.sqrt(2))
    assert str(tower_iterate_raw(Fraction(1, 16), 2, P).format(5)) == "0.84089…"
    with pytest.raises(TowerOverflowError):
        tower_iterate_raw(3, 6, P)
    with pytest.raises(ValueError):
        tower_iterate_raw(2, 0, P)


def test_tower_value_invariants():
    h = tower_h(Fraction(1, 2), P).h
    with pytest.raises(ValueError):
        TowerValue(TowerMode.SPLIT_ODD_EVEN, None, h, h)
    with pytest.raises(ValueError):
        TowerValue(TowerMode.OUT_OF_DOMAIN, h, h, h)
    with pytest.raises(ValueError):
        TowerValue(TowerMode.CONVERGED_H, h, h, h, method="newton")
    d = tower_odd_even(Fraction(1, 17), P).to_dict(6)
    assert d["mode"] == "split_odd_even" and d["h_odd"] == "0.204274…" and d["h"] is None
