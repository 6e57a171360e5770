"""Arithmetic-nature verdicts for solutions of the exponential equations.

The engine only applies the rules listed in :mod:`powertower.rules`. When none
of them fits, the verdict is ``Unknown``; nothing is inferred from numerics
alone. Numerical values are used for domain checks and to locate candidates,
but every ``Rational`` verdict rests on an exact identity checked with integer
arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

from .expr import (
    ExpRat,
    NumberExpr,
    Rat,
    RatPow,
    Surd,
    ratpow,
    reciprocal,
)
from .rational import (
    QQTag,
    curve_rational_point,
    format_rational,
    is_curve_pair,
    parse_rational,
    qq_nature,
    rational_nth_root,
)
from .real import DEFAULT_PRECISION, Precision, _const, as_mpf, solve_x_pow_x
from .rules import RULES
from .tower import tower_h

__all__ = [
    "Nature",
    "Verdict",
    "RootVerdict",
    "CurveAtT",
    "InversePowerVerdict",
    "OddEvenVerdict",
    "self_nature",
    "powers_never_rational",
    "classify_xx_solutions",
    "classify_tt_eq_qq",
    "classify_curve_pair",
    "classify_curve_at_t",
    "classify_tower",
    "classify_tower_inverse_power",
    "classify_tower_odd_even",
    "classify_qqq",
]


class Nature(str, enum.Enum):
    RATIONAL = "Rational"
    ALGEBRAIC_IRRATIONAL = "AlgebraicIrrational"
    TRANSCENDENTAL = "Transcendental"
    IRRATIONAL_UNKNOWN_NATURE = "IrrationalUnknownNature"
    AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL = "AtLeastOneOfPairTranscendental"
    CONDITIONALLY_TRANSCENDENTAL = "ConditionallyTranscendental"
    UNKNOWN = "Unknown"
    OUT_OF_DOMAIN = "OutOfDomain"


@dataclass(frozen=True)
class Verdict:
    nature: Nature
    rules: tuple[str, ...] = ()
    witness: Any = None
    note: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.nature is not Nature.UNKNOWN and not self.rules:
            raise ValueError(f"{self.nature.value} verdict needs at least one rule")
        unknown = [r for r in self.rules if r not in RULES]
        if unknown:
            raise ValueError(f"rules not in the catalog: {unknown}")
        if self.nature is Nature.RATIONAL and self.witness is None:
            raise ValueError("a Rational verdict carries its exact value")

    def witness_text(self) -> str | None:
        return _witness_text(self.witness)

    def to_dict(self) -> dict:
        return {
            "nature": self.nature.value,
            "rules": list(self.rules),
            "witness": self.witness_text(),
            "note": self.note,
        }


def _witness_text(w) -> str | None:
    if w is None:
        return None
    if isinstance(w, Fraction):
        return format_rational(w)
    if isinstance(w, tuple):
        return "(" + ", ".join(_witness_text(v) for v in w) + ")"
    return str(w)


def _rational(q, *rules, note="") -> Verdict:
    return Verdict(Nature.RATIONAL, rules, Fraction(q), note)


_UNKNOWN = Verdict(Nature.UNKNOWN, (), None, "no rule in the catalog applies")


class RootVerdict(NamedTuple):
    branch: str
    verdict: Verdict


class CurveAtT(NamedTuple):
    x: Verdict
    y: Verdict
    value: Verdict


class InversePowerVerdict(NamedTuple):
    base: Verdict
    value: Verdict


class OddEvenVerdict(NamedTuple):
    odd: Verdict
    even: Verdict
    pair: Verdict


def _is_algebraic(x: NumberExpr) -> bool:
    return not isinstance(x, ExpRat) or x.r == 0


def self_nature(x: NumberExpr) -> Verdict:
    """Nature of the number ``x`` itself."""
    if isinstance(x, Rat):
        return _rational(x.q, "rational-arithmetic")
    if isinstance(x, Surd):
        return Verdict(Nature.ALGEBRAIC_IRRATIONAL, ("quadratic-surd",), x)
    if isinstance(x, RatPow):
        p, q = x.e.numerator, x.e.denominator
        root = rational_nth_root(x.r ** abs(p), q)
        if root is not None:
            return _rational(root if p >= 0 else 1 / root, "rational-root-extraction")
        return Verdict(Nature.ALGEBRAIC_IRRATIONAL, ("rational-root-extraction",), x)
    if isinstance(x, ExpRat):
        if x.r == 0:
            return _rational(1, "rational-arithmetic")
        return Verdict(Nature.TRANSCENDENTAL, ("hermite-lindemann",), x)
    raise TypeError(f"not a NumberExpr: {x!r}")


def powers_never_rational(x: NumberExpr) -> bool:
    """True iff ``x**n`` is irrational for every positive integer ``n``."""
    if isinstance(x, Rat):
        return False
    if isinstance(x, Surd):
        # a == 0: (b*sqrt(d))**2 is rational. a != 0: conjugate argument.
        return x.a != 0
    if isinstance(x, RatPow):
        # Some power (n = denominator of the exponent) is always rational.
        return False
    if isinstance(x, ExpRat):
        return x.r != 0
    raise TypeError(f"not a NumberExpr: {x!r}")


def _self_power_root(q: Fraction) -> int | None:
    """``n`` with ``n**n == q``, if any."""
    if q.denominator != 1 or q < 1:
        return None
    n = 1
    while n**n < q:
        n += 1
    return n if n**n == q else None


def _curve_partner(s: Fraction) -> Fraction | None:
    """If ``s`` is a coordinate of a rational curve point, the other coordinate."""
    if s <= 1:
        return None
    n = 1
    while n**n <= s.denominator:
        step = Fraction(n + 1, n)
        if is_curve_pair(s, s * step) == n:
            return s * step
        if is_curve_pair(s / step, s) == n:
            return s / step
        n += 1
    return None


def classify_tt_eq_qq(q, prec: Precision = DEFAULT_PRECISION) -> Verdict:
    """Nature of the solution ``T != Q`` of ``T**T = Q**Q`` for rational ``Q`` in (0, 1)."""
    q = parse_rational(q)
    if not 0 < q < 1:
        raise ValueError("classify_tt_eq_qq needs 0 < Q < 1")
    partner = _curve_partner(1 / q)
    if partner is None:
        return Verdict(Nature.TRANSCENDENTAL, ("xx-qq-partner", "gelfond-schneider"))
    return _rational(1 / partner, "xx-qq-partner", "curve-algebraic-points")


def _branch_of(value, prec: Precision) -> str:
    return "lower" if as_mpf(value, prec) < _const("inv_e", prec) else "upper"


def classify_xx_solutions(a: NumberExpr, prec: Precision = DEFAULT_PRECISION) -> list[RootVerdict]:
    """Verdict for every positive solution of ``x**x = a``, labelled by branch."""
    sols = solve_x_pow_x(a, prec)
    if sols.count == 0:
        return [RootVerdict("none", Verdict(Nature.OUT_OF_DOMAIN, ("xx-no-solution",)))]
    branches = [name for name, r in (("lower", sols.lower), ("upper", sols.upper)) if r is not None]

    def every(verdict):
        return [RootVerdict(b, verdict) for b in branches]

    if isinstance(a, Rat):
        n = _self_power_root(a.q)
        if n is not None:
            return [RootVerdict("upper", _rational(n, "xx-self-power"))]
        return every(
            Verdict(
                Nature.TRANSCENDENTAL,
                ("xx-rational-not-self-power", "qq-irrational", "gelfond-schneider"),
            )
        )
    if isinstance(a, RatPow) and a.r == a.e:
        q = a.r
        own = _branch_of(q, prec)
        result = [RootVerdict(own, _rational(q, "xx-self-power", "rational-arithmetic"))]
        if q < 1:
            other = "upper" if own == "lower" else "lower"
            if other in branches:
                result.append(RootVerdict(other, classify_tt_eq_qq(q, prec)))
        return sorted(result, key=lambda rv: rv.branch)
    if isinstance(a, ExpRat) and a.r != 0:
        return every(Verdict(Nature.TRANSCENDENTAL, ("xx-exp-rational", "hermite-lindemann")))
    if _is_algebraic(a) and powers_never_rational(a):
        rules = ("xx-algebraic-powers-irrational", "surd-conjugate-powers", "gelfond-schneider")
        return every(Verdict(Nature.TRANSCENDENTAL, rules))
    return every(_UNKNOWN)


def _schanuel_upgrade(v: Verdict, rule: str) -> Verdict:
    return Verdict(
        Nature.CONDITIONALLY_TRANSCENDENTAL,
        v.rules + (rule,),
        v.witness,
        "both transcendental, assuming Schanuel's conjecture",
    )


def classify_curve_pair(
    a: NumberExpr, prec: Precision = DEFAULT_PRECISION, assume_schanuel: bool = False
) -> Verdict:
    """Nature of the pair ``1 < T < e < R`` with ``T**R = R**T = a``."""
    if as_mpf(a, prec) <= _const("e_to_e", prec):
        return Verdict(Nature.OUT_OF_DOMAIN, ("curve-threshold",), note="needs A > e^e")
    verdict = _UNKNOWN
    if isinstance(a, Rat) and a.q.denominator == 1:
        if a.q == 16:
            x, y = curve_rational_point(1)
            assert is_curve_pair(x, y) == 1
            return Verdict(Nature.RATIONAL, ("curve-algebraic-points",), (x, y))
        verdict = Verdict(
            Nature.AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL,
            ("curve-integer-value", "curve-algebraic-points", "gelfond-schneider"),
        )
    elif isinstance(a, RatPow) and a.r != a.e:
        lo, hi = sorted((a.r, a.e))
        if lo > 0 and is_curve_pair(lo, hi) is not None:
            return Verdict(Nature.RATIONAL, ("curve-algebraic-points",), (lo, hi))
    if verdict is _UNKNOWN and _is_algebraic(a) and powers_never_rational(a):
        verdict = Verdict(
            Nature.AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL,
            ("curve-algebraic-powers", "surd-conjugate-powers", "gelfond-schneider"),
        )
    if assume_schanuel and verdict.nature is Nature.AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL:
        verdict = _schanuel_upgrade(verdict, "schanuel-pair")
    return verdict


def classify_curve_at_t(t) -> CurveAtT:
    """Natures of ``x(t)``, ``y(t)`` and ``x(t)**y(t)`` for rational ``t > 0``."""
    t = parse_rational(t)
    if t <= 0:
        raise ValueError("curve parameter t must be positive")
    if t.denominator == 1:
        x, y = curve_rational_point(t.numerator)
        value = ratpow(x, y)
        value_verdict = self_nature(value)
        value_verdict = Verdict(
            value_verdict.nature,
            ("curve-algebraic-points",) + value_verdict.rules,
            value_verdict.witness,
        )
        return CurveAtT(
            _rational(x, "curve-algebraic-points"), _rational(y, "curve-algebraic-points"), value_verdict
        )
    s = 1 + 1 / t
    x, y = ratpow(s, t), ratpow(s, t + 1)
    rules = ("curve-algebraic-points", "rational-root-extraction")
    return CurveAtT(
        Verdict(Nature.ALGEBRAIC_IRRATIONAL, rules, x),
        Verdict(Nature.ALGEBRAIC_IRRATIONAL, rules, y),
        Verdict(Nature.TRANSCENDENTAL, ("curve-algebraic-points", "gelfond-schneider")),
    )


_MAX_VERIFY_BITS = 1 << 20


def _as_rational_power(a: NumberExpr):
    """``(r, e)`` with ``a == r**e`` for square roots and RatPow, else None."""
    if isinstance(a, RatPow):
        return a.r, a.e
    if isinstance(a, Surd) and a.a == 0 and a.b > 0:
        return a.b * a.b * a.d, Fraction(1, 2)
    return None


def _g_preimage(a: NumberExpr, prec: Precision) -> Fraction | None:
    """Rational ``q`` in [1/e, e] with ``q**(1/q) == a`` exactly, if one exists.

    The candidate is read off ``h(a)`` numerically; the identity
    ``q**(n*s) == r**(p*m)`` (for ``q = m/n``, ``a = r**(p/s)``) is then
    checked in exact arithmetic.
    """
    form = _as_rational_power(a)
    if form is None:
        return None
    r, e = form
    if isinstance(a, RatPow) and r == 1 / e and e > 0:
        q = r
    else:
        value = tower_h(a, prec)
        if value.h is None:
            return None
        q = value.h.to_fraction().limit_denominator(10**6)
    if q <= 0:
        return None
    m, n, p, s = q.numerator, q.denominator, e.numerator, e.denominator
    size = n * s * max(m, n).bit_length() + abs(p) * m * max(r.numerator, r.denominator).bit_length()
    if size > _MAX_VERIFY_BITS:
        return None
    if q ** (n * s) != r ** (p * m):
        return None
    lo, hi = _const("inv_e", prec), _const("e", prec)
    if not lo <= as_mpf(q, prec) <= hi:
        return None
    return q


def classify_tower(a: NumberExpr, prec: Precision = DEFAULT_PRECISION) -> Verdict:
    """Nature of the infinite tower ``h(a)``."""
    v = as_mpf(a, prec)
    if not _const("e_to_minus_e", prec) <= v <= _const("e_to_inv_e", prec):
        return Verdict(Nature.OUT_OF_DOMAIN, ("tower-domain",), note="needs e^(-e) <= A <= e^(1/e)")
    if isinstance(a, ExpRat) and a.r != 0:
        return Verdict(Nature.TRANSCENDENTAL, ("tower-exp-algebraic", "hermite-lindemann"))
    if isinstance(a, Rat):
        if a.q == Fraction(1, 4):
            return _rational(Fraction(1, 2), "tower-inverts-g")
        if a.q == 1:
            return _rational(1, "tower-inverts-g")
        return Verdict(
            Nature.TRANSCENDENTAL, ("tower-rational", "qq-irrational", "gelfond-schneider")
        )
    if _is_algebraic(a) and powers_never_rational(a):
        return Verdict(
            Nature.TRANSCENDENTAL,
            ("tower-algebraic-powers", "surd-conjugate-powers", "gelfond-schneider"),
        )
    q = _g_preimage(a, prec)
    if q is not None:
        return _rational(q, "tower-inverts-g", "rational-arithmetic")
    return _UNKNOWN


def classify_tower_inverse_power(b: NumberExpr, prec: Precision = DEFAULT_PRECISION) -> InversePowerVerdict:
    """Natures of ``T = 1/b**b`` and of ``h(T) = 1/b`` for ``b`` in (1/e, e)."""
    v = as_mpf(b, prec)
    if not _const("inv_e", prec) < v < _const("e", prec):
        out = Verdict(Nature.OUT_OF_DOMAIN, ("tower-domain",), note="needs 1/e < B < e")
        return InversePowerVerdict(out, out)
    own = self_nature(b)
    inv = reciprocal(b)
    if own.nature is Nature.ALGEBRAIC_IRRATIONAL:
        return InversePowerVerdict(
            Verdict(Nature.TRANSCENDENTAL, ("tower-inverse-power", "gelfond-schneider")),
            Verdict(Nature.ALGEBRAIC_IRRATIONAL, ("tower-inverse-power", "tower-inverts-g"), inv),
        )
    if own.nature is Nature.RATIONAL:
        q = own.witness
        base = self_nature(ratpow(1 / q, q))
        return InversePowerVerdict(base, _rational(1 / q, "tower-inverts-g", "rational-arithmetic"))
    return InversePowerVerdict(
        _UNKNOWN, Verdict(Nature.TRANSCENDENTAL, ("tower-inverts-g", "hermite-lindemann"), inv)
    )


def classify_tower_odd_even(
    q, prec: Precision = DEFAULT_PRECISION, assume_schanuel: bool = False
) -> OddEvenVerdict:
    """Natures of ``h_o(q)`` and ``h_e(q)`` for rational ``0 < q <= e**(-e)``."""
    q = parse_rational(q)
    if q <= 0 or as_mpf(q, prec) > _const("e_to_minus_e", prec):
        out = Verdict(
            Nature.OUT_OF_DOMAIN,
            ("odd-even-domain", "tower-domain"),
            note="towers coincide above e^(-e); use classify_tower",
        )
        return OddEvenVerdict(out, out, out)
    if q == Fraction(1, 16):
        rules = ("odd-even-one-sixteenth", "odd-even-rational-fixed")
        pair = Verdict(Nature.RATIONAL, rules, (Fraction(1, 4), Fraction(1, 2)))
        return OddEvenVerdict(_rational(Fraction(1, 4), *rules), _rational(Fraction(1, 2), *rules), pair)
    rules = ("odd-even-irrational", "odd-even-rational-fixed", "gelfond-schneider")
    single = Verdict(Nature.IRRATIONAL_UNKNOWN_NATURE, rules)
    pair = Verdict(Nature.AT_LEAST_ONE_OF_PAIR_TRANSCENDENTAL, rules)
    if assume_schanuel:
        single = _schanuel_upgrade(single, "schanuel-tower")
        pair = _schanuel_upgrade(pair, "schanuel-tower")
    return OddEvenVerdict(single, single, pair)


_MAX_TOWER_BITS = 1 << 22


def classify_qqq(q) -> Verdict:
    """Nature of ``Q**(Q**Q)`` for nonzero rational ``Q``."""
    q = parse_rational(q)
    inner = qq_nature(q)
    if inner.tag is QQTag.NON_REAL:
        raise ValueError(f"Q**Q is not real for Q = {format_rational(q)}")
    if q.denominator != 1:
        if q < 0:
            raise ValueError(
                f"Q**(Q**Q) is not real for Q = {format_rational(q)}: negative base, irrational exponent"
            )
        return Verdict(Nature.TRANSCENDENTAL, ("qqq-transcendental", "qq-irrational", "gelfond-schneider"))
    exponent = inner.value
    if exponent.denominator == 1:
        bits = abs(exponent.numerator) * max(1, abs(q.numerator).bit_length())
        if bits > _MAX_TOWER_BITS:
            raise OverflowError(f"Q**(Q**Q) has about {bits} bits; too large to write out")
        return _rational(q**exponent.numerator, "qq-irrational", "rational-arithmetic")
    # Negative integer Q with |Q| >= 2: Q**Q = +-1/k, and Q**(1/k) needs an odd k.
    k = exponent.denominator
    if k % 2 == 0:
        raise ValueError(f"Q**(Q**Q) is not real for Q = {format_rational(q)}")
    sign = -1 if q < 0 else 1
    root = rational_nth_root(abs(q) ** abs(exponent.numerator), k)
    if root is not None:
        value = root if exponent > 0 else 1 / root
        return _rational(sign * value, "qq-irrational", "rational-root-extraction")
    return Verdict(Nature.ALGEBRAIC_IRRATIONAL, ("qq-irrational", "rational-root-extraction"))
