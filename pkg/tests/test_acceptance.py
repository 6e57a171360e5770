"""Acceptance suite: one test group per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import io
import json
import random
from fractions import Fraction

import mpmath
import pytest

import reference as ref
from oracles import heights, rational_power, surd_powers_rational, tower_fix_brute_force
from powertower import (
    Nature,
    Precision,
    Rat,
    Surd,
    classify_curve_pair,
    classify_tower,
    classify_tower_odd_even,
    classify_xx_solutions,
    curve_rational_point,
    g,
    g_inverse,
    is_curve_pair,
    log_z_of_t,
    make_surd,
    parse_expr,
    powers_never_rational,
    qq_nature,
    QQTag,
    solve_curve,
    solve_x_pow_x,
    tower_fix_rational_solutions,
    tower_h,
    tower_odd_even,
    x_of_t,
    y_of_t,
)
from powertower.cli import run

P128 = Precision(128)
P256 = Precision(256)


def cli(*argv):
    out = io.StringIO()
    code = run(["--format", "record", *argv], out=out)
    return code, json.loads(out.getvalue())


def verdicts_by_branch(a, prec=P128):
    return {rv.branch: rv.verdict for rv in classify_xx_solutions(a, prec)}


# ---- 1 ------------------------------------------------------------------------

C1 = pytest.mark.criterion(1, "x^x = sqrt(3)-1 and x^x = 2: values and Transcendental verdicts")


@C1
def test_xx_surd_roots():
    a = parse_expr("sqrt(3)-1")
    sols = solve_x_pow_x(a, P128)
    assert sols.count == 2
    assert ref.within_last_place(sols.lower, ref.XX_SURD_ROOTS[0])
    assert ref.within_last_place(sols.upper, ref.XX_SURD_ROOTS[1])
    v = verdicts_by_branch(a)
    for branch in ("lower", "upper"):
        assert v[branch].nature is Nature.TRANSCENDENTAL
        assert "xx-algebraic-powers-irrational" in v[branch].rules


@C1
def test_xx_two_root():
    sols = solve_x_pow_x(Rat(Fraction(2)), P128)
    assert sols.count == 1 and ref.within_last_place(sols.upper, ref.XX_TWO_ROOT)
    v = verdicts_by_branch(Rat(Fraction(2)))
    assert v["upper"].nature is Nature.TRANSCENDENTAL
    assert "xx-rational-not-self-power" in v["upper"].rules


@C1
def test_xx_cli_records():
    code, rec = cli("solve-xx", "sqrt(3)-1")
    assert code == 0
    assert [r["verdict"]["nature"] for r in rec["results"]["roots"]] == ["Transcendental"] * 2
    assert "xx-algebraic-powers-irrational" in rec["citations"]
    code, rec = cli("solve-xx", "2")
    assert code == 0 and rec["results"]["roots"][0]["value"].startswith("1.55961")


# ---- 2 ------------------------------------------------------------------------

C2 = pytest.mark.criterion(2, "x^y = y^x: 14+sqrt(2), 17, exact 16, error below e^e")


@C2
@pytest.mark.parametrize("expr, expected", [("14+sqrt(2)", ref.CURVE_14_SQRT2), ("17", ref.CURVE_17)])
def test_curve_values(expr, expected):
    sol = solve_curve(parse_expr(expr), P128)
    assert ref.within_last_place(sol.x, expected[0])
    assert ref.within_last_place(sol.y, expected[1])
    assert classify_curve_pair(parse_expr(expr), P128).nature is Nature.AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL


@C2
def test_curve_sixteen_exact():
    v = classify_curve_pair(Rat(Fraction(16)), P128)
    assert v.nature is Nature.RATIONAL and v.witness == ref.CURVE_16
    code, rec = cli("curve", "16")
    assert code == 0 and (rec["results"]["x"], rec["results"]["y"]) == ("2", "4")


@C2
def test_curve_fifteen_is_domain_error():
    code, rec = cli("curve", "15")
    assert code == 2
    assert ref.E_TO_E in rec["results"]["error"]


# ---- 3 ------------------------------------------------------------------------

C3 = pytest.mark.criterion(3, "x^x = Q^Q: exact root plus its partner")


@C3
@pytest.mark.parametrize(
    "expr, exact, partner",
    [("(1/3)^(1/3)", Fraction(1, 3), ref.XX_THIRD_PARTNER), ("(2/3)^(2/3)", Fraction(2, 3), ref.XX_TWO_THIRDS_PARTNER)],
)
def test_qq_partner_numeric(expr, exact, partner):
    a = parse_expr(expr)
    sols = solve_x_pow_x(a, P128)
    v = verdicts_by_branch(a)
    rational = [b for b, vv in v.items() if vv.nature is Nature.RATIONAL]
    assert len(rational) == 1
    assert v[rational[0]].witness == exact
    other = "upper" if rational[0] == "lower" else "lower"
    assert v[other].nature is Nature.TRANSCENDENTAL
    assert ref.within_last_place(getattr(sols, other), partner)
    assert abs(getattr(sols, rational[0]).to_fraction() - exact) < Fraction(1, 2**100)


@C3
def test_qq_both_exact():
    v = verdicts_by_branch(parse_expr("(4/9)^(4/9)"))
    assert {vv.witness for vv in v.values()} == {Fraction(4, 9), Fraction(8, 27)}
    assert all(vv.nature is Nature.RATIONAL for vv in v.values())
    code, rec = cli("solve-xx", "(4/9)^(4/9)")
    assert sorted(r["exact"] for r in rec["results"]["roots"]) == ["4/9", "8/27"]


# ---- 4 ------------------------------------------------------------------------

C4 = pytest.mark.criterion(4, "infinite tower values and verdicts")


@C4
@pytest.mark.parametrize(
    "expr, expected, nature",
    [
        ("1/4", Fraction(1, 2), Nature.RATIONAL),
        ("sqrt(2)", Fraction(2), Nature.RATIONAL),
        ("e^(1/3)", ref.TOWER_E_THIRD, Nature.TRANSCENDENTAL),
        ("1/2", ref.TOWER_HALF, Nature.TRANSCENDENTAL),
        ("(sqrt(2)+1)/2", ref.TOWER_SURD, Nature.TRANSCENDENTAL),
    ],
)
def test_tower_values(expr, expected, nature):
    a = parse_expr(expr)
    h = tower_h(a, P128).h
    if isinstance(expected, Fraction):
        assert abs(h.to_fraction() - expected) <= Fraction(1, 2**64)
    else:
        assert ref.within_last_place(h, expected)
    v = classify_tower(a, P128)
    assert v.nature is nature
    if nature is Nature.RATIONAL:
        assert v.witness == expected


# ---- 5 ------------------------------------------------------------------------

C5 = pytest.mark.criterion(5, "odd/even towers of 1/16 and 1/17")


@C5
@pytest.mark.parametrize("method", ["fixed_point", "iteration"])
def test_one_sixteenth(method):
    tv = tower_odd_even(Fraction(1, 16), P128, method)
    assert tv.converged
    tol = 10 * Fraction(1, 2 ** (P128.bits // 2))
    assert abs(tv.h_odd.to_fraction() - ref.ODD_EVEN_16[0]) <= tol
    assert abs(tv.h_even.to_fraction() - ref.ODD_EVEN_16[1]) <= tol
    code, rec = cli("tower", "1/16", "--odd-even", "--method", method.replace("_", "-"))
    ver = rec["results"]["verdicts"]
    assert (ver["h_odd"]["witness"], ver["h_even"]["witness"]) == ("1/4", "1/2")


@C5
def test_one_seventeenth():
    tv = tower_odd_even(Fraction(1, 17), P128)
    assert ref.within_last_place(tv.h_odd, ref.ODD_EVEN_17[0])
    assert ref.within_last_place(tv.h_even, ref.ODD_EVEN_17[1])
    ov = classify_tower_odd_even(Fraction(1, 17), P128)
    assert ov.odd.nature is Nature.IRRATIONAL_UNKNOWN_NATURE
    assert ov.even.nature is Nature.IRRATIONAL_UNKNOWN_NATURE
    assert ov.pair.nature is Nature.AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL


# ---- 6 ------------------------------------------------------------------------

C6 = pytest.mark.criterion(6, "exact Diophantine brute-force suites")


@C6
def test_qq_never_rational_for_non_integers():
    for a in range(1, 201):
        for b in range(2, 201):
            q = Fraction(a, b)
            if q.denominator != b:
                continue
            assert qq_nature(q).tag is not QQTag.RATIONAL_VALUE, q
            assert rational_power(q, q) is None, q


@C6
def test_tower_fix_matches_brute_force():
    truth = tower_fix_brute_force(100)
    for q, hits in truth.items():
        found = {q1 for q1 in tower_fix_rational_solutions(q) if max(q1.numerator, q1.denominator) <= 100}
        assert found == hits, q


@C6
def test_curve_pair_identity_and_rejections():
    for n in range(1, 51):
        assert is_curve_pair(*curve_rational_point(n)) == n
    rng = random.Random(20240607)
    ctx = mpmath.MPContext()
    ctx.prec = 256
    rejected = 0
    while rejected < 10_000:
        kind = rng.randrange(3)
        if kind == 0:
            a1 = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
            a2 = a1 + Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        elif kind == 1:
            n = rng.randint(1, 50)
            a1, a2 = curve_rational_point(n)
            a2 += Fraction(rng.choice([-1, 1]), rng.randint(10**3, 10**9))
        else:
            n, m = rng.sample(range(1, 51), 2)
            a1, a2 = curve_rational_point(n)[0], curve_rational_point(m)[1]
        if not 0 < a1 < a2:
            continue
        # a1**a2 != a2**a1 certifies the pair is not on the curve
        gap = a2 * ctx.log(ctx.mpf(a1.numerator) / a1.denominator) - a1 * ctx.log(ctx.mpf(a2.numerator) / a2.denominator)
        if abs(gap) < ctx.mpf(2) ** -200:
            continue
        assert is_curve_pair(a1, a2) is None, (a1, a2)
        rejected += 1


# ---- 7 ------------------------------------------------------------------------

C7 = pytest.mark.criterion(7, "real-valued property suites")


def _grid(lo, hi, n):
    return [lo + (hi - lo) * (k + 0.5) / n for k in range(n)]


@C7
def test_g_inverse_round_trips():
    ctx = P128.ctx
    top = ctx.exp(1 / ctx.e)
    for v in _grid(ctx.mpf(1), top, 100):
        for branch in ("lower", "upper"):
            u = g_inverse(v, branch, P128)
            assert abs(g(u, P128).value - v) / v < ctx.mpf(2) ** -64
    for v in _grid(ctx.mpf("0.01"), ctx.mpf(1), 100):
        u = g_inverse(v, "lower", P128)
        assert abs(g(u, P128).value - v) / v < ctx.mpf(2) ** -64


@C7
def test_curve_identity_and_monotone_z():
    ctx = P128.ctx
    for t in _grid(ctx.mpf(0), ctx.mpf(100), 100):
        x, y = x_of_t(t, P128).value, y_of_t(t, P128).value
        lhs, rhs = y * ctx.log(x), x * ctx.log(y)
        assert abs(lhs - rhs) <= abs(lhs) * P128.band
    zs = [log_z_of_t(t, P128).value for t in _grid(ctx.mpf(0), ctx.mpf(50), 1000)]
    assert all(a > b for a, b in zip(zs, zs[1:]))


@C7
def test_tower_inverts_g():
    ctx = P128.ctx
    for x in _grid(1 / ctx.e, ctx.e, 100):
        h = tower_h(g(x, P128), P128).h.value
        assert abs(h - x) <= 10 * P128.band
    for x in _grid(ctx.e, ctx.mpf(4), 20):
        assert tower_h(g(x, P128), P128).h.value < x


@C7
def test_odd_even_relations():
    ctx = P128.ctx
    low = ctx.exp(-ctx.e)
    for x in _grid(ctx.mpf("0.001"), low, 50):
        tv = tower_odd_even(x, P128)
        ho, he = tv.h_odd.value, tv.h_even.value
        assert ho < he
        assert abs(ctx.power(x, ho) - he) <= 10 * P128.band
        assert abs(ctx.power(x, he) - ho) <= 10 * P128.band


# ---- 8 ------------------------------------------------------------------------

C8 = pytest.mark.criterion(8, "powers_never_rational against the surd-power recurrence")


@C8
def test_powers_never_rational_oracle():
    checked = 0
    for d in range(2, 21):
        expr = make_surd(0, 1, d)
        if not isinstance(expr, Surd) or expr.d != d:
            continue  # not squarefree
        for a in range(-10, 11):
            for b in range(-10, 11):
                if b == 0:
                    continue
                s = Surd(Fraction(a), Fraction(b), d)
                expected = not surd_powers_rational(Fraction(a), Fraction(b), d, 50)
                assert powers_never_rational(s) == expected, s
                checked += 1
    assert checked > 2000


# ---- 9 ------------------------------------------------------------------------

C9 = pytest.mark.criterion(9, "256-bit precision keeps printed digits and shrinks residuals")

P1024 = Precision(1024)


def _xx_residual(root, a):
    ctx = P1024.ctx
    x = ctx.mpf(root.value)
    return abs(x * ctx.log(x) - ctx.log(a.evaluate(P1024).value))


def _curve_residual(t, a):
    ctx = P1024.ctx
    return abs(log_z_of_t(ctx.mpf(t.value), P1024).value - ctx.log(a.evaluate(P1024).value))


@C9
@pytest.mark.parametrize("expr", ["sqrt(3)-1", "2"])
def test_xx_precision_scaling(expr):
    a = parse_expr(expr)
    lo, hi = solve_x_pow_x(a, P128), solve_x_pow_x(a, P256)
    for r1, r2 in zip(lo.roots, hi.roots):
        assert r1.format(6) == r2.format(6)
        assert _xx_residual(r2, a) <= _xx_residual(r1, a) * mpmath.mpf(2) ** -100


@C9
@pytest.mark.parametrize("expr", ["14+sqrt(2)", "17"])
def test_curve_precision_scaling(expr):
    a = parse_expr(expr)
    s1, s2 = solve_curve(a, P128), solve_curve(a, P256)
    assert (s1.x.format(6), s1.y.format(6)) == (s2.x.format(6), s2.y.format(6))
    assert _curve_residual(s2.t, a) <= _curve_residual(s1.t, a) * mpmath.mpf(2) ** -100


@C9
def test_cli_output_unchanged_at_256_bits():
    for argv in (["solve-xx", "sqrt(3)-1"], ["solve-xx", "2"], ["curve", "14+sqrt(2)"], ["curve", "17"], ["curve", "16"]):
        _, r128 = cli("--precision", "128", *argv)
        _, r256 = cli("--precision", "256", *argv)
        assert r128["results"] == r256["results"]
    c1, e128 = cli("--precision", "128", "curve", "15")
    c2, e256 = cli("--precision", "256", "curve", "15")
    assert c1 == c2 == 2 and e128["results"] == e256["results"]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
