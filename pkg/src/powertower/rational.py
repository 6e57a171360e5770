"""Exact rational arithmetic and the exponential-Diophantine decision procedures.

Everything here runs on Python integers and :class:`fractions.Fraction`; no
floating point is involved, so a "yes" from any of these procedures is a proof
by computation rather than a numerical coincidence.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Rational",
    "QQTag",
    "QQNature",
    "parse_rational",
    "format_rational",
    "integer_nth_root",
    "rational_nth_root",
    "qq_nature",
    "curve_rational_point",
    "is_curve_pair",
    "tower_fix_rational_solutions",
    "is_tower_fix",
]

#: Exact fraction in lowest terms with positive denominator.
Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading sign) into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    """Canonical text form: ``p`` for integers, ``p/q`` otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def integer_nth_root(n: int, k: int) -> int | None:
    """Return ``r`` with ``r**k == n`` exactly, or None if ``n`` is not a k-th power."""
    if k < 1:
        raise ValueError("root index must be a positive integer")
    if n < 0:
        raise ValueError("integer_nth_root needs a nonnegative radicand")
    if n < 2 or k == 1:
        return n
    # Bisection on [lo, hi) with hi a power of two above the root.
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo if lo**k == n else None


def rational_nth_root(q: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a positive rational, or None when it is irrational.

    Numerator and denominator are coprime, so by unique factorization the root
    is rational exactly when both are perfect k-th powers.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("rational_nth_root needs q > 0")
    num = integer_nth_root(q.numerator, k)
    if num is None:
        return None
    den = integer_nth_root(q.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


class QQTag(enum.Enum):
    RATIONAL_VALUE = "RationalValue"
    IRRATIONAL_REAL = "IrrationalReal"
    NON_REAL = "NonReal"


@dataclass(frozen=True)
class QQNature:
    tag: QQTag
    value: Fraction | None = None

    def __post_init__(self):
        if (self.tag is QQTag.RATIONAL_VALUE) != (self.value is not None):
            raise ValueError("only RationalValue carries a value")


def qq_nature(q: Fraction | int | str) -> QQNature:
    """Decide the nature of ``Q**Q`` for a nonzero rational ``Q``.

    Integers give an exact rational value. For ``Q = ±a/b`` with ``b > 1`` the
    answer is pure case analysis: a negative ``Q`` with even ``b`` needs an even
    root of a negative number and is non-real; every other case is an
    irrational real number.
    """
    q = parse_rational(q)
    if q == 0:
        raise ValueError("0**0 is undefined here")
    if q.denominator == 1:
        return QQNature(QQTag.RATIONAL_VALUE, q**q.numerator)
    if q < 0 and q.denominator % 2 == 0:
        return QQNature(QQTag.NON_REAL)
    return QQNature(QQTag.IRRATIONAL_REAL)


def curve_rational_point(n: int) -> tuple[Fraction, Fraction]:
    """Exact ``((1+1/n)**n, (1+1/n)**(n+1))``, the n-th rational point on x^y = y^x."""
    if int(n) != n or n < 1:
        raise ValueError("curve_rational_point needs a positive integer")
    n = int(n)
    s = Fraction(n + 1, n)
    x = s**n
    return x, x * s


def is_curve_pair(a1: Fraction, a2: Fraction) -> int | None:
    """Return ``n`` when ``(a1, a2)`` is the rational curve point for ``t = n``."""
    a1, a2 = Fraction(a1), Fraction(a2)
    if not 0 < a1 < a2:
        raise ValueError("is_curve_pair needs 0 < A1 < A2")
    ratio = a2 / a1 - 1
    if ratio.numerator != 1:
        return None
    n = ratio.denominator
    # x(n) has denominator exactly n**n; compare sizes before building it.
    if a1.denominator.bit_length() < n * (n.bit_length() - 1):
        return None
    if a1 != Fraction(n + 1, n) ** n:
        return None
    return n


_ONE_SIXTEENTH = Fraction(1, 16)


def tower_fix_rational_solutions(q: Fraction | int | str) -> frozenset[Fraction]:
    """All rational ``Q1`` with ``Q**(Q**Q1) == Q1`` for a positive rational ``Q``.

    The solutions are ``{1/2, 1/4}`` for ``Q = 1/16``, ``{1/n}`` for
    ``Q = 1/n**n`` and nothing otherwise. ``1/16`` is not of the form
    ``1/n**n`` so the two families never overlap.
    """
    q = parse_rational(q)
    if q <= 0:
        raise ValueError("tower_fix_rational_solutions needs Q > 0")
    if q == _ONE_SIXTEENTH:
        return frozenset({Fraction(1, 2), Fraction(1, 4)})
    if q.numerator != 1:
        return frozenset()
    den = q.denominator
    n = 1
    while n**n <= den:
        if n**n == den:
            return frozenset({Fraction(1, n)})
        n += 1
    return frozenset()


def is_tower_fix(q: Fraction | int | str, q1: Fraction | int | str) -> bool:
    q, q1 = parse_rational(q), parse_rational(q1)
    if q <= 0 or q1 <= 0:
        raise ValueError("is_tower_fix needs Q > 0 and Q1 > 0")
    return q1 in tower_fix_rational_solutions(q)
