"""Precision-parameterized reals, named constants and monotone root solvers.

Values are mpmath floats living in a per-thread :class:`mpmath.MPContext` whose
precision is ``bits + guard``. Nothing here touches mpmath's global context, so
two callers can work at different precisions at the same time.

All exponential equations are solved in logarithmic form (``x ln x = ln A``
instead of ``x**x = A``), which keeps the brackets monotone and avoids overflow.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import mpmath
from mpmath import libmp

__all__ = [
    "Precision",
    "DEFAULT_PRECISION",
    "BigReal",
    "Bracket",
    "XxSolutions",
    "CurveSolution",
    "DomainError",
    "BracketError",
    "RootFindingError",
    "as_mpf",
    "parse_real",
    "constant",
    "rpow",
    "find_root_monotone",
    "solve_x_pow_x",
    "g",
    "g_inverse",
    "x_of_t",
    "y_of_t",
    "log_z_of_t",
    "solve_curve",
]


class DomainError(ValueError):
    """Input lies outside the region where the requested quantity exists."""


class BracketError(ValueError):
    """The bracket handed to the root finder does not straddle a sign change."""


class RootFindingError(ArithmeticError):
    """The bracket collapsed but the residual stayed large (no genuine root)."""


_local = threading.local()


def _context(prec: int) -> mpmath.MPContext:
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


@dataclass(frozen=True)
class Precision:
    """Working precision: ``bits`` of result accuracy plus ``guard`` internal bits."""

    bits: int = 128
    guard: int = 16

    def __post_init__(self):
        if self.bits < 32:
            raise ValueError("Precision.bits must be at least 32")
        if self.guard < 16:
            raise ValueError("Precision.guard must be at least 16")

    @property
    def working(self) -> int:
        return self.bits + self.guard

    @property
    def ctx(self) -> mpmath.MPContext:
        return _context(self.working)

    @property
    def eps(self):
        """``2**-bits``: target relative width of a root bracket."""
        return self.ctx.ldexp(1, -self.bits)

    @property
    def residual_tol(self):
        """``2**(guard - bits)``: residual allowance per unit of scale."""
        return self.ctx.ldexp(1, self.guard - self.bits)

    @property
    def band(self):
        """``2**(-bits/2)``: half-precision band for boundary and convergence tests."""
        return self.ctx.ldexp(1, -(self.bits // 2))


DEFAULT_PRECISION = Precision()


def _round_to_bits(v, bits: int, ctx):
    return ctx.make_mpf(libmp.mpf_pos(v._mpf_, bits, libmp.round_nearest))


@dataclass(frozen=True, eq=False)
class BigReal:
    """A finite real carried with the precision that produced it."""

    value: mpmath.mpf
    prec: Precision = DEFAULT_PRECISION

    def __post_init__(self):
        if not mpmath.isfinite(self.value):
            raise ArithmeticError(f"non-finite value {self.value!r}")

    def __float__(self) -> float:
        return float(self.value)

    def _key(self, other):
        if isinstance(other, BigReal):
            return other.value
        return as_mpf(other, self.prec)

    def __eq__(self, other):
        try:
            return self.value == self._key(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < self._key(other)

    def __le__(self, other):
        return self.value <= self._key(other)

    def __gt__(self, other):
        return self.value > self._key(other)

    def __ge__(self, other):
        return self.value >= self._key(other)

    def __neg__(self):
        return BigReal(-self.value, self.prec)

    def __abs__(self):
        return BigReal(abs(self.value), self.prec)

    def __sub__(self, other):
        return BigReal(self.value - self._key(other), self.prec)

    def __add__(self, other):
        return BigReal(self.value + self._key(other), self.prec)

    def to_fraction(self) -> Fraction:
        """The exact binary value as a Fraction."""
        man, exp = self.value.man_exp
        if man is None or man == 0:
            return Fraction(0)
        return Fraction(int(man)) * Fraction(2) ** int(exp)

    def format(self, digits: int = 6) -> str:
        """Decimal string truncated to ``digits`` significant digits.

        A trailing ``…`` marks that digits were cut off.
        """
        return format_truncated(self.to_fraction(), digits)

    def __str__(self):
        return self.format(30)

    def __repr__(self):
        return f"BigReal({self.format(30)}, bits={self.prec.bits})"


def format_truncated(q: Fraction, digits: int) -> str:
    """Truncate (toward zero) an exact value to ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    q = Fraction(q)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    # Decimal exponent of the leading digit: 10**lead <= q < 10**(lead+1).
    lead = len(str(q.numerator)) - len(str(q.denominator))
    if Fraction(10) ** lead > q:
        lead -= 1
    if Fraction(10) ** (lead + 1) <= q:
        lead += 1
    shift = digits - 1 - lead
    scaled = q * Fraction(10) ** shift
    kept = scaled.numerator // scaled.denominator
    exact = kept == scaled
    body = str(kept)
    if shift > 0:
        body = body.rjust(shift + 1, "0")
        body = body[:-shift] + "." + body[-shift:]
        body = body.rstrip("0").rstrip(".") if exact else body
    else:
        body = body + "0" * (-shift)
    return sign + body + ("" if exact else "…")


_DECIMAL_RE = re.compile(r"\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*")


def parse_real(text: str, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """Parse a decimal literal (``1.5``, ``2e-3``) or a fraction (``1/3``)."""
    if "/" in text:
        from .rational import parse_rational

        return BigReal(as_mpf(parse_rational(text), prec), prec)
    if not _DECIMAL_RE.fullmatch(text):
        raise ValueError(f"not a real literal: {text!r}")
    return BigReal(prec.ctx.mpf(text.strip()), prec)


def as_mpf(x, prec: Precision = DEFAULT_PRECISION):
    """Lower a number-like input to an mpf in ``prec``'s working context.

    Accepts BigReal, mpf, int, Fraction, float, decimal/fraction strings, and
    any object with an ``evaluate(prec)`` method (symbolic expressions).
    """
    ctx = prec.ctx
    if isinstance(x, BigReal):
        return ctx.mpf(x.value)
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, (int, float, mpmath.mpf)) or hasattr(x, "_mpf_"):
        return ctx.mpf(x)
    if isinstance(x, str):
        return parse_real(x, prec).value
    evaluate = getattr(x, "evaluate", None)
    if evaluate is not None:
        return ctx.mpf(evaluate(prec).value)
    raise TypeError(f"cannot interpret {type(x).__name__} as a real number")


_CONSTANTS: dict[str, Callable] = {
    "e": lambda ctx: ctx.e,
    "inv_e": lambda ctx: 1 / ctx.e,
    "e_to_e": lambda ctx: ctx.exp(ctx.e),
    "e_to_minus_e": lambda ctx: ctx.exp(-ctx.e),
    "e_to_inv_e": lambda ctx: ctx.exp(1 / ctx.e),
    "e_to_minus_inv_e": lambda ctx: ctx.exp(-1 / ctx.e),
}


def constant(name: str, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """One of ``e, inv_e, e_to_e, e_to_minus_e, e_to_inv_e, e_to_minus_inv_e``.

    Computed with the guard bits and rounded to ``prec.bits``.
    """
    try:
        fn = _CONSTANTS[name]
    except KeyError:
        raise ValueError(f"unknown constant {name!r}; choose from {sorted(_CONSTANTS)}") from None
    ctx = prec.ctx
    return BigReal(_round_to_bits(+fn(ctx), prec.bits, ctx), prec)


def _const(name: str, prec: Precision):
    # Unrounded working-precision value for internal comparisons.
    return +_CONSTANTS[name](prec.ctx)


def rpow(x, y, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """``x**y = exp(y ln x)`` for ``x > 0``."""
    ctx = prec.ctx
    xv, yv = as_mpf(x, prec), as_mpf(y, prec)
    if xv <= 0:
        raise DomainError("rpow needs a positive base")
    return BigReal(ctx.power(xv, yv), prec)


class Bracket(NamedTuple):
    lo: object
    hi: object


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def find_root_monotone(
    f: Callable,
    bracket: Bracket | tuple,
    prec: Precision = DEFAULT_PRECISION,
    scale=None,
) -> BigReal:
    """Root of ``f`` inside a sign-changing bracket.

    Illinois false-position steps, with a forced bisection whenever two steps
    fail to halve the bracket, so the bracket never grows and convergence is
    at least as fast as bisection. Stops when the bracket is narrower than
    ``2**-bits`` relative to its magnitude, then checks that
    ``|f(root)| <= 2**(guard-bits) * scale``. When ``scale`` is not given it is
    estimated as ``max(1, |root| * slope)`` from the final bracket.
    """
    ctx = prec.ctx
    lo, hi = as_mpf(bracket[0], prec), as_mpf(bracket[1], prec)
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return BigReal(lo, prec)
    if fhi == 0:
        return BigReal(hi, prec)
    if _sign(flo) == _sign(fhi):
        raise BracketError(
            f"f has the same sign at both ends of [{ctx.nstr(lo, 8)}, {ctx.nstr(hi, 8)}]"
        )

    eps = prec.eps
    max_iter = 8 * prec.working + 200
    widths = [hi - lo]
    side = 0
    bisect = False
    for _ in range(max_iter):
        if hi - lo <= eps * max(abs(lo), abs(hi)):
            break
        if bisect:
            mid = (lo + hi) / 2
        else:
            mid = (lo * fhi - hi * flo) / (fhi - flo)
            if not lo < mid < hi:
                mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0:
            lo = hi = mid
            break
        if _sign(fm) == _sign(flo):
            lo, flo = mid, fm
            if side == -1:
                fhi /= 2
            side = -1
        else:
            hi, fhi = mid, fm
            if side == 1:
                flo /= 2
            side = 1
        widths.append(hi - lo)
        bisect = len(widths) >= 3 and widths[-1] > widths[-3] / 2

    if lo == hi:
        root = lo
        slope = 0
    else:
        root = (lo + hi) / 2
        slope = abs(f(hi) - f(lo)) / (hi - lo)
    if scale is None:
        scale = max(ctx.mpf(1), abs(root) * slope)
    fr = f(root)
    if abs(fr) > prec.residual_tol * scale:
        raise RootFindingError(
            f"bracket collapsed at {ctx.nstr(root, 12)} but |f| = {ctx.nstr(abs(fr), 5)}"
        )
    return BigReal(root, prec)


class XxSolutions(NamedTuple):
    """Real roots of ``x**x = A``: ``lower`` below 1/e, ``upper`` above it."""

    count: int
    lower: BigReal | None
    upper: BigReal | None
    degenerate: bool = False

    @property
    def roots(self) -> list[BigReal]:
        return [r for r in (self.lower, self.upper) if r is not None]


def solve_x_pow_x(a, prec: Precision = DEFAULT_PRECISION) -> XxSolutions:
    """All positive solutions of ``x**x = a``.

    No root below ``e**(-1/e)``, a double root at ``1/e`` on that threshold
    (reported with ``degenerate=True`` when ``a`` is within ``2**(-bits/2)``
    of it), two roots straddling ``1/e`` on ``(e**(-1/e), 1)``, and a single
    root in ``[1, inf)`` for ``a >= 1``.
    """
    ctx = prec.ctx
    av = as_mpf(a, prec)
    if av <= 0:
        raise DomainError("x**x = A needs A > 0")
    threshold = _const("e_to_minus_inv_e", prec)
    inv_e = _const("inv_e", prec)
    if abs(av - threshold) < prec.band:
        return XxSolutions(1, None, BigReal(inv_e, prec), degenerate=True)
    if av < threshold:
        return XxSolutions(0, None, None)

    log_a = ctx.log(av)

    def f(x):
        return x * ctx.log(x) - log_a

    if av >= 1:
        if av == 1:
            return XxSolutions(1, None, BigReal(ctx.mpf(1), prec))
        hi = ctx.mpf(2)
        while f(hi) <= 0:
            hi *= 2
        return XxSolutions(1, None, find_root_monotone(f, (1, hi), prec))

    upper = find_root_monotone(f, (inv_e, 1), prec)
    lo = inv_e / 2
    while f(lo) <= 0:
        lo /= 2
    lower = find_root_monotone(f, (lo, inv_e), prec)
    return XxSolutions(2, lower, upper)


def g(u, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """``u**(1/u)``; increasing on ``(0, e]``, decreasing after, maximum ``e**(1/e)``."""
    ctx = prec.ctx
    uv = as_mpf(u, prec)
    if uv <= 0:
        raise DomainError("g(u) = u**(1/u) needs u > 0")
    return BigReal(ctx.exp(ctx.log(uv) / uv), prec)


def g_inverse(v, branch: str = "lower", prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """Invert ``g(u) = u**(1/u)`` on one monotone branch.

    ``lower``: ``0 < v <= e**(1/e)``, result in ``(0, e]``.
    ``upper``: ``1 < v <= e**(1/e)``, result in ``[e, inf)``.
    Solved as ``ln(u)/u = ln(v)``.
    """
    ctx = prec.ctx
    vv = as_mpf(v, prec)
    top = _const("e_to_inv_e", prec)
    e = _const("e", prec)
    if branch not in ("lower", "upper"):
        raise ValueError("branch must be 'lower' or 'upper'")
    if vv <= 0 or vv > top * (1 + prec.eps):
        raise DomainError(f"g_inverse needs 0 < v <= e^(1/e) = {ctx.nstr(top, 6)}")
    if vv >= top * (1 - prec.eps):
        return BigReal(e, prec)
    log_v = ctx.log(vv)

    def f(u):
        return ctx.log(u) / u - log_v

    if branch == "lower":
        lo = ctx.mpf(1)
        while f(lo) >= 0:
            lo /= 2
        return find_root_monotone(f, (lo, e), prec)

    if vv <= 1:
        raise DomainError("upper branch of g_inverse needs v > 1 (it is unbounded as v -> 1)")
    hi = 2 * e
    limit = ctx.ldexp(1, 2 * prec.working)
    while f(hi) >= 0:
        hi *= 2
        if hi > limit:
            raise DomainError("v too close to 1 for the upper branch at this precision")
    return find_root_monotone(f, (e, hi), prec)


def _t_value(t, prec):
    tv = as_mpf(t, prec)
    if tv <= 0:
        raise DomainError("curve parameter t must be positive")
    return tv


def x_of_t(t, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """``(1 + 1/t)**t``, increasing from 1 to e on ``t > 0``."""
    ctx = prec.ctx
    tv = _t_value(t, prec)
    return BigReal(ctx.exp(tv * ctx.log1p(1 / tv)), prec)


def y_of_t(t, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """``(1 + 1/t)**(t+1)``, decreasing from infinity to e on ``t > 0``."""
    ctx = prec.ctx
    tv = _t_value(t, prec)
    return BigReal(ctx.exp((tv + 1) * ctx.log1p(1 / tv)), prec)


def _log_z(tv, ctx):
    # ln(x(t)**y(t)) = y(t) * t * ln(1 + 1/t)
    lg = ctx.log1p(1 / tv)
    return ctx.exp((tv + 1) * lg) * tv * lg


def log_z_of_t(t, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """``ln z(t)`` where ``z(t) = x(t)**y(t) = y(t)**x(t)``; decreasing to ``e``."""
    return BigReal(_log_z(_t_value(t, prec), prec.ctx), prec)


class CurveSolution(NamedTuple):
    t: BigReal
    x: BigReal
    y: BigReal


_CURVE_BRACKET_LIMIT = 64


def solve_curve(a, prec: Precision = DEFAULT_PRECISION) -> CurveSolution:
    """The unique ``t > 0`` with ``x(t)**y(t) = a`` together with ``x(t), y(t)``.

    Requires ``a > e**e``. The bracket starts at ``t = 1`` (where ``z = 16``) and
    is doubled or halved, up to ``2**64``, until it straddles ``a``.
    """
    ctx = prec.ctx
    av = as_mpf(a, prec)
    threshold = _const("e_to_e", prec)
    if av <= threshold:
        raise DomainError(
            f"x^y = y^x = A with x < y has a solution only for A > e^e = "
            f"{BigReal(threshold, prec).format(7)} (got A = {ctx.nstr(av, 8)})"
        )
    log_a = ctx.log(av)

    def f(t):
        return _log_z(t, ctx) - log_a

    one = ctx.mpf(1)
    f1 = f(one)
    if f1 == 0:
        tv = one
    elif f1 > 0:
        lo, hi = one, one * 2
        steps = 0
        while f(hi) > 0:
            lo, hi = hi, hi * 2
            steps += 1
            if steps > _CURVE_BRACKET_LIMIT:
                raise DomainError("A is too close to e^e to resolve at this precision")
        tv = find_root_monotone(f, (lo, hi), prec).value
    else:
        lo, hi = one / 2, one
        steps = 0
        while f(lo) < 0:
            lo, hi = lo / 2, lo
            steps += 1
            if steps > _CURVE_BRACKET_LIMIT:
                raise DomainError("A is too large to bracket at this precision")
        tv = find_root_monotone(f, (lo, hi), prec).value
    return CurveSolution(BigReal(tv, prec), x_of_t(tv, prec), y_of_t(tv, prec))
