"""A deliberately small grammar of exactly-known reals.

Four shapes cover every constant the toolkit classifies:

* ``Rat(q)``            a rational number
* ``Surd(a, b, d)``     ``a + b*sqrt(d)`` with ``b != 0`` and ``d >= 2`` squarefree
* ``RatPow(r, e)``      ``r**e`` with rational ``r > 0`` and rational exponent ``e``
* ``ExpRat(r)``         ``e**r`` with rational ``r``

Anything the parser cannot reduce to one of these raises
:class:`UnsupportedForm` instead of guessing; a general algebraic number would
make downstream verdicts unsound.

``RatPow`` keeps its base and exponent as written (``(4/9)^(4/9)`` is not
rewritten as ``(2/3)^(8/9)``) because the classifier recognises the
``Q^Q`` and ``q^(1/q)`` shapes syntactically. It does fold to ``Rat`` when
the power is rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from .rational import format_rational, rational_nth_root
from .real import DEFAULT_PRECISION, BigReal, Precision

__all__ = [
    "Rat",
    "Surd",
    "RatPow",
    "ExpRat",
    "NumberExpr",
    "ExprError",
    "ParseError",
    "UnsupportedForm",
    "parse_expr",
    "squarefree_decompose",
    "make_surd",
    "ratpow",
    "exprat",
    "surd_power",
    "reciprocal",
    "to_text",
]

_SQUAREFREE_LIMIT = 10**18


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, position: int, text: str):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}: {text!r}")


class UnsupportedForm(ExprError):
    """Well-formed input whose value is outside the four supported shapes."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = k*k*d`` with ``d`` squarefree; returns ``(k, d)``.

    Trial division only runs up to ``n**(1/3)``: what is left afterwards has at
    most two prime factors, so it is either a perfect square or squarefree.
    """
    if n < 1:
        raise ValueError("squarefree_decompose needs n >= 1")
    if n > _SQUAREFREE_LIMIT:
        raise UnsupportedForm(f"sqrt radicand {n} exceeds {_SQUAREFREE_LIMIT}")
    k, d, p = 1, 1, 2
    while p * p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        k *= r
    else:
        d *= n
    return k, d


def _is_squarefree(d: int) -> bool:
    return squarefree_decompose(d)[0] == 1


@dataclass(frozen=True)
class Rat:
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))

    def evaluate(self, prec: Precision = DEFAULT_PRECISION) -> BigReal:
        ctx = prec.ctx
        return BigReal(ctx.mpf(self.q.numerator) / self.q.denominator, prec)

    def __str__(self):
        return format_rational(self.q)


@dataclass(frozen=True)
class Surd:
    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            raise ExprError("Surd needs a nonzero coefficient b")
        if self.d < 2 or not _is_squarefree(self.d):
            raise ExprError(f"Surd needs a squarefree d >= 2, got {self.d}")

    def evaluate(self, prec: Precision = DEFAULT_PRECISION) -> BigReal:
        ctx = prec.ctx
        a = ctx.mpf(self.a.numerator) / self.a.denominator
        b = ctx.mpf(self.b.numerator) / self.b.denominator
        return BigReal(a + b * ctx.sqrt(self.d), prec)

    def __str__(self):
        root = f"sqrt({self.d})"
        if self.b == 1:
            tail = root
        elif self.b == -1:
            tail = f"-{root}"
        else:
            tail = f"{format_rational(self.b)}*{root}"
        if self.a == 0:
            return tail
        if tail.startswith("-"):
            return f"{format_rational(self.a)} - {tail[1:]}"
        return f"{format_rational(self.a)} + {tail}"


@dataclass(frozen=True)
class RatPow:
    r: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "e", Fraction(self.e))
        if self.r <= 0:
            raise ExprError("RatPow needs a positive base")

    def evaluate(self, prec: Precision = DEFAULT_PRECISION) -> BigReal:
        ctx = prec.ctx
        r = ctx.mpf(self.r.numerator) / self.r.denominator
        e = ctx.mpf(self.e.numerator) / self.e.denominator
        return BigReal(ctx.exp(e * ctx.log(r)), prec)

    def __str__(self):
        base = format_rational(self.r)
        if self.r.denominator != 1:
            base = f"({base})"
        return f"{base}^({format_rational(self.e)})"


@dataclass(frozen=True)
class ExpRat:
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r == 0:
            raise ExprError("e^0 is the rational 1; use exprat() to canonicalize")

    def evaluate(self, prec: Precision = DEFAULT_PRECISION) -> BigReal:
        ctx = prec.ctx
        return BigReal(ctx.exp(ctx.mpf(self.r.numerator) / self.r.denominator), prec)

    def __str__(self):
        if self.r == 1:
            return "e"
        return f"e^({format_rational(self.r)})"


NumberExpr = Union[Rat, Surd, RatPow, ExpRat]


def to_text(x: NumberExpr) -> str:
    return str(x)


def make_surd(a, b, d: int) -> NumberExpr:
    """``a + b*sqrt(d)`` in canonical form (squarefree ``d``, folds to Rat)."""
    a, b = Fraction(a), Fraction(b)
    if d < 0:
        raise UnsupportedForm("square roots of negative numbers are not real")
    if b == 0 or d == 0:
        return Rat(a)
    k, d = squarefree_decompose(d)
    if d == 1:
        return Rat(a + b * k)
    return Surd(a, b * k, d)


def ratpow(r, e) -> NumberExpr:
    """``r**e`` in canonical form: Rat when the value is rational, else RatPow."""
    r, e = Fraction(r), Fraction(e)
    if r <= 0:
        if r == 0 and e > 0:
            return Rat(0)
        if r < 0 and e.denominator == 1:
            return Rat(r**e.numerator)
        if r == 0:
            raise ExprError("0 raised to a nonpositive power is undefined")
        raise UnsupportedForm("non-integer powers of negative numbers are outside the grammar")
    if e.denominator == 1:
        return Rat(r**e.numerator)
    root = rational_nth_root(r ** abs(e.numerator), e.denominator)
    if root is not None:
        return Rat(root if e > 0 else 1 / root)
    return RatPow(r, e)


def surd_power(x: Surd, n: int) -> tuple[Fraction, Fraction]:
    """Exact ``(A_n, B_n)`` with ``(a + b*sqrt(d))**n = A_n + B_n*sqrt(d)``."""
    if n < 0:
        raise ValueError("surd_power needs n >= 0")
    A, B = Fraction(1), Fraction(0)
    base_a, base_b = x.a, x.b
    while n:
        if n & 1:
            A, B = A * base_a + B * base_b * x.d, A * base_b + B * base_a
        base_a, base_b = base_a * base_a + base_b * base_b * x.d, 2 * base_a * base_b
        n >>= 1
    return A, B


def reciprocal(x: NumberExpr) -> NumberExpr:
    if isinstance(x, Rat):
        if x.q == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return Rat(1 / x.q)
    if isinstance(x, Surd):
        norm = x.a * x.a - x.b * x.b * x.d
        return make_surd(x.a / norm, -x.b / norm, x.d)
    if isinstance(x, RatPow):
        return ratpow(x.r, -x.e)
    return ExpRat(-x.r)


def exprat(r) -> NumberExpr:
    """``e**r``; only ``r = 0`` folds (to 1)."""
    r = Fraction(r)
    return Rat(1) if r == 0 else ExpRat(r)


# ---- arithmetic used by the parser -------------------------------------------


def _as_surd_parts(x: NumberExpr):
    if isinstance(x, Rat):
        return x.q, Fraction(0), None
    if isinstance(x, Surd):
        return x.a, x.b, x.d
    return None


def _add(x: NumberExpr, y: NumberExpr) -> NumberExpr:
    px, py = _as_surd_parts(x), _as_surd_parts(y)
    if px is None or py is None:
        if isinstance(x, Rat) and x.q == 0:
            return y
        if isinstance(y, Rat) and y.q == 0:
            return x
        raise UnsupportedForm(f"cannot add {x} and {y} within the grammar")
    (a1, b1, d1), (a2, b2, d2) = px, py
    if d1 is not None and d2 is not None and d1 != d2:
        raise UnsupportedForm(f"sum of square roots with different radicands: {x} + {y}")
    d = d1 if d1 is not None else d2
    return make_surd(a1 + a2, b1 + b2, d or 0)


def _neg(x: NumberExpr) -> NumberExpr:
    return _mul(Rat(-1), x)


def _mul(x: NumberExpr, y: NumberExpr) -> NumberExpr:
    if isinstance(y, Rat) and not isinstance(x, Rat):
        x, y = y, x
    if isinstance(x, Rat):
        q = x.q
        if q == 1:
            return y
        if isinstance(y, Rat):
            return Rat(q * y.q)
        if isinstance(y, Surd):
            return make_surd(q * y.a, q * y.b, y.d)
        if q == 0:
            return Rat(0)
        raise UnsupportedForm(f"cannot multiply {x} and {y} within the grammar")
    if isinstance(x, Surd) and isinstance(y, Surd) and x.d == y.d:
        return make_surd(x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d)
    if isinstance(x, ExpRat) and isinstance(y, ExpRat):
        return exprat(x.r + y.r)
    if isinstance(x, RatPow) and isinstance(y, RatPow) and x.r == y.r:
        return ratpow(x.r, x.e + y.e)
    raise UnsupportedForm(f"cannot multiply {x} and {y} within the grammar")


def _div(x: NumberExpr, y: NumberExpr) -> NumberExpr:
    if isinstance(y, Rat) and y.q == 0:
        raise ExprError("division by zero")
    return _mul(x, reciprocal(y))


def _pow(x: NumberExpr, e: Fraction) -> NumberExpr:
    if isinstance(x, Rat):
        return ratpow(x.q, e)
    if isinstance(x, ExpRat):
        return exprat(x.r * e)
    if isinstance(x, RatPow):
        return ratpow(x.r, x.e * e)
    if e.denominator == 1:
        n = e.numerator
        A, B = surd_power(x, abs(n))
        result = make_surd(A, B, x.d)
        return result if n >= 0 else reciprocal(result)
    raise UnsupportedForm(f"non-integer power of a quadratic surd: ({x})^({format_rational(e)})")


# ---- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(sqrt)|(e)|([-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise ParseError("unexpected character", pos, text)
            if m.lastindex is None:
                break
            kind = ("int", "sqrt", "e", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> NumberExpr:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return result

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = _add(value, rhs if op == "+" else _neg(rhs))
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            value = _mul(value, rhs) if op == "*" else _div(value, rhs)
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return _neg(self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.factor()

    def factor(self):
        base = self.base()
        if self.peek()[1] == "^":
            self.take()
            return _pow(base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        if self.peek()[1] == "(":
            self.take("(")
            q = self.signed_rational()
            self.take(")")
            return q
        return self.signed_rational()

    def signed_rational(self) -> Fraction:
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        num = int(self.take(kind="int")[1])
        if self.peek()[1] == "/":
            self.take()
            tok = self.take(kind="int")
            if int(tok[1]) == 0:
                raise ParseError("zero denominator", tok[2], self.text)
            return sign * Fraction(num, int(tok[1]))
        return Fraction(sign * num)

    def base(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Rat(int(value))
        if kind == "sqrt":
            self.take()
            self.take("(")
            n = int(self.take(kind="int")[1])
            self.take(")")
            return make_surd(0, 1, n)
        if kind == "e":
            self.take()
            return ExpRat(1)
        if value == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos, self.text)


def parse_expr(text: str) -> NumberExpr:
    """Parse text such as ``sqrt(3)-1``, ``(1/3)^(1/3)`` or ``e^(1/3)``.

    Grammar::

        expr   := term (('+'|'-') term)*
        term   := unary (('*'|'/') unary)*
        unary  := ('-'|'+') unary | factor
        factor := base ('^' exponent)?
        base   := integer | 'sqrt' '(' natural ')' | 'e' | '(' expr ')'

    ``exponent`` is a signed rational, optionally parenthesised. A rational
    literal ``p/q`` is read as integer division, which gives the same value.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 0, str(text))
    return _Parser(text).parse()
