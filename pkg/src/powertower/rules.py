"""Catalog of the facts the classifier is allowed to use.

Every verdict lists the identifiers of the rules that justify it; an
identifier that is not in :data:`RULES` is a bug. Two named theorems are taken
as axioms; the remaining entries are consequences of them combined with exact
integer arithmetic (unique factorization) that this package carries out.
"""

from __future__ import annotations

from typing import NamedTuple


class Rule(NamedTuple):
    id: str
    name: str
    statement: str


_CATALOG = [
    Rule(
        "hermite-lindemann",
        "Hermite-Lindemann theorem",
        "e**a is transcendental for every nonzero algebraic number a.",
    ),
    Rule(
        "gelfond-schneider",
        "Gelfond-Schneider theorem",
        "a**b is transcendental when a is algebraic with a not in {0, 1} and b is "
        "algebraic and irrational.",
    ),
    Rule(
        "rational-arithmetic",
        "Exact rational value",
        "The number is a ratio of integers, computed exactly.",
    ),
    Rule(
        "quadratic-surd",
        "Quadratic surd",
        "a + b*sqrt(d) with rational a, nonzero rational b and squarefree d >= 2 is a "
        "root of a rational quadratic and is irrational.",
    ),
    Rule(
        "rational-root-extraction",
        "Rational powers of rationals",
        "For r = u/v in lowest terms, r**(p/q) is rational iff u**|p| and v**|p| are "
        "perfect q-th powers (unique factorization); otherwise it is algebraic and irrational.",
    ),
    Rule(
        "surd-conjugate-powers",
        "No rational power of a mixed surd",
        "If a, b are nonzero, (a + b*sqrt(d))**n is irrational for every n >= 1: a rational "
        "power would equal its conjugate (a - b*sqrt(d))**n, forcing a + b*sqrt(d) = "
        "+-(a - b*sqrt(d)).",
    ),
    Rule(
        "qq-irrational",
        "Q**Q for non-integer rational Q",
        "For Q rational and not an integer, Q**Q is irrational (non-real when Q < 0 has an "
        "even denominator); for integers it is the rational Q**Q.",
    ),
    Rule(
        "qqq-transcendental",
        "Triple tower of a non-integer rational",
        "For positive rational Q that is not an integer, Q**(Q**Q) is transcendental: the "
        "exponent Q**Q is algebraic and irrational.",
    ),
    Rule(
        "xx-no-solution",
        "Range of x**x",
        "On x > 0, x**x has its minimum e**(-1/e) at x = 1/e; below that value there is no "
        "solution, on (e**(-1/e), 1) there are two (one each side of 1/e), and on [1, inf) one.",
    ),
    Rule(
        "xx-self-power",
        "Integer self-powers",
        "x**x = n**n with n a positive integer has the solution x = n.",
    ),
    Rule(
        "xx-algebraic-powers-irrational",
        "x**x equal to a number with no rational power",
        "If T**T = A where A is algebraic and A**n is irrational for every n >= 1, then T is "
        "transcendental (an algebraic T would be rational, m/n, making A**n rational).",
    ),
    Rule(
        "xx-rational-not-self-power",
        "x**x equal to a rational that is not n**n",
        "If T**T = A with A rational and A not of the form n**n, then T is irrational, hence "
        "transcendental.",
    ),
    Rule(
        "xx-exp-rational",
        "x**x equal to e**r",
        "If T**T = e**r with rational r != 0, then T = e**(r/T), so an algebraic T would "
        "contradict the Hermite-Lindemann theorem.",
    ),
    Rule(
        "xx-qq-partner",
        "x**x = Q**Q for rational Q in (0, 1)",
        "The solution T != Q is algebraic iff 1/Q is x(n) or y(n) for some positive integer n, "
        "where x(t) = (1+1/t)**t and y(t) = (1+1/t)**(t+1); then T = 1/y(n) or 1/x(n), "
        "otherwise T is transcendental.",
    ),
    Rule(
        "curve-threshold",
        "Existence on x**y = y**x",
        "x**y = y**x = z with 0 < x < y is solvable iff z > e**e; then 1 < x < e < y and "
        "x = x(t), y = y(t) for a unique t > 0, with z(t) = x(t)**y(t) strictly decreasing.",
    ),
    Rule(
        "curve-algebraic-points",
        "Algebraic points of x**y = y**x",
        "Both coordinates are algebraic iff t is rational. For integer t the coordinates are "
        "rational and the common power is algebraic; for non-integer t the coordinates are "
        "irrational and the common power is transcendental.",
    ),
    Rule(
        "curve-integer-value",
        "Integer common power",
        "If T**R = R**T = N with N a positive integer other than 16 and T != R, at least one "
        "of T, R is transcendental (no integer t has z(t) = N).",
    ),
    Rule(
        "curve-algebraic-powers",
        "Common power with no rational power",
        "If T**R = R**T = A with T != R, A algebraic and A**n irrational for all n >= 1, at "
        "least one of T, R is transcendental.",
    ),
    Rule(
        "schanuel-pair",
        "Conditional on Schanuel's conjecture (pairs)",
        "If z**w and w**z are algebraic (z, w not 0 or 1), then z and w are both rational or "
        "both transcendental.",
    ),
    Rule(
        "tower-domain",
        "Convergence of the infinite tower",
        "x, x**x, x**(x**x), ... converges iff e**(-e) <= x <= e**(1/e); the limit h(x) "
        "satisfies x**h = h and lies in [1/e, e].",
    ),
    Rule(
        "tower-inverts-g",
        "The tower inverts u**(1/u)",
        "h(q**(1/q)) = q for 1/e <= q <= e; in particular h(1/4) = 1/2, h(1) = 1 and "
        "h(sqrt(2)) = 2.",
    ),
    Rule(
        "tower-exp-algebraic",
        "Tower of e**a",
        "For nonzero algebraic a with e**a in the convergence interval, y = h(e**a) satisfies "
        "e**(a*y) = y and is transcendental.",
    ),
    Rule(
        "tower-rational",
        "Tower of a rational",
        "For rational A in the convergence interval other than 1/4 and 1, h(A) is "
        "transcendental.",
    ),
    Rule(
        "tower-algebraic-powers",
        "Tower of a number with no rational power",
        "For algebraic A in the convergence interval with A**n irrational for every n >= 1, "
        "h(A) is transcendental.",
    ),
    Rule(
        "tower-inverse-power",
        "Transcendental base with algebraic tower",
        "For algebraic irrational B in (1/e, e), T = 1/B**B is transcendental while "
        "h(T) = 1/B is algebraic.",
    ),
    Rule(
        "odd-even-domain",
        "Odd and even towers",
        "The odd- and even-height towers converge on (0, e**(1/e)] and coincide with h on "
        "[e**(-e), e**(1/e)]; below e**(-e) they differ, with h_o < h_e, x**h_e = h_o and "
        "x**h_o = h_e.",
    ),
    Rule(
        "odd-even-rational-fixed",
        "Rational solutions of Q**(Q**Q1) = Q1",
        "For positive rationals the only solutions are (1/16, 1/2), (1/16, 1/4) and "
        "(1/n**n, 1/n).",
    ),
    Rule(
        "odd-even-one-sixteenth",
        "Odd and even towers of 1/16",
        "h_o(1/16) = 1/4 and h_e(1/16) = 1/2.",
    ),
    Rule(
        "odd-even-irrational",
        "Odd and even towers of other rationals",
        "For rational Q in (0, e**(-e)] other than 1/16, h_o(Q) and h_e(Q) are both irrational "
        "and at least one of them is transcendental.",
    ),
    Rule(
        "schanuel-tower",
        "Conditional on Schanuel's conjecture (towers)",
        "If a != 0 is algebraic, z is irrational and a**(a**z) = z, then z is transcendental.",
    ),
]

RULES: dict[str, Rule] = {rule.id: rule for rule in _CATALOG}


def describe(rule_id: str) -> str:
    rule = RULES[rule_id]
    return f"{rule.id}: {rule.name}. {rule.statement}"
