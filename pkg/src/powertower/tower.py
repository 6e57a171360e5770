"""Infinite power towers ``h``, ``h_o`` (odd heights) and ``h_e`` (even heights).

The primary method is fixed-point solving: ``h(x)`` is the lower branch of the
inverse of ``u**(1/u)``, and below ``e**(-e)`` the odd/even limits are the
outer fixed points of the two-step map ``y -> x**(x**y)``. Direct iteration of
``x, x**x, x**(x**x), ...`` is kept as an independent cross-check; it crawls at
the interval endpoints where the map's derivative has modulus one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .real import (
    DEFAULT_PRECISION,
    BigReal,
    DomainError,
    Precision,
    _const,
    as_mpf,
    find_root_monotone,
    g_inverse,
)

__all__ = [
    "TowerMode",
    "TowerValue",
    "TowerOverflowError",
    "tower_h",
    "tower_odd_even",
    "two_step_fixed_points",
    "tower_iterate_raw",
    "MAX_ITERATIONS",
    "GRID_SIZE",
]

MAX_ITERATIONS = 10**6
GRID_SIZE = 4096


class TowerOverflowError(OverflowError):
    pass


class TowerMode(str, enum.Enum):
    CONVERGED_H = "converged_h"
    SPLIT_ODD_EVEN = "split_odd_even"
    OUT_OF_DOMAIN = "out_of_domain"


@dataclass(frozen=True)
class TowerValue:
    mode: TowerMode
    h: BigReal | None = None
    h_odd: BigReal | None = None
    h_even: BigReal | None = None
    iterations: int = 0
    method: str = "fixed_point"
    converged: bool = True
    boundary: bool = False

    def __post_init__(self):
        if self.method not in ("fixed_point", "iteration"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.mode is TowerMode.CONVERGED_H:
            if self.h is None or self.h_odd is not self.h or self.h_even is not self.h:
                raise ValueError("converged_h needs h with h_odd = h_even = h")
        elif self.mode is TowerMode.SPLIT_ODD_EVEN:
            if self.h is not None or self.h_odd is None or self.h_even is None:
                raise ValueError("split_odd_even needs h_odd and h_even only")
            if not self.h_odd < self.h_even:
                raise ValueError("split_odd_even needs h_odd < h_even")
        elif any(v is not None for v in (self.h, self.h_odd, self.h_even)):
            raise ValueError("out_of_domain carries no values")

    def to_dict(self, digits: int = 6) -> dict:
        def fmt(v):
            return None if v is None else v.format(digits)

        return {
            "mode": self.mode.value,
            "h": fmt(self.h),
            "h_odd": fmt(self.h_odd),
            "h_even": fmt(self.h_even),
            "iterations": self.iterations,
            "method": self.method,
            "converged": self.converged,
            "boundary": self.boundary,
        }


def _converged(h: BigReal, iterations=0, method="fixed_point", converged=True, boundary=False):
    return TowerValue(TowerMode.CONVERGED_H, h, h, h, iterations, method, converged, boundary)


def tower_iterate_raw(x, height: int, prec: Precision = DEFAULT_PRECISION) -> BigReal:
    """The finite tower ``x**x**...**x`` of the given height, built bottom-up."""
    ctx = prec.ctx
    xv = as_mpf(x, prec)
    if xv <= 0:
        raise DomainError("power towers need x > 0")
    if height < 1:
        raise ValueError("height must be at least 1")
    log_x = ctx.log(xv)
    a = xv
    for _ in range(height - 1):
        exponent = a * log_x
        if exponent > ctx.ldexp(1, 32):
            raise TowerOverflowError("finite tower exceeds exp(2**32)")
        a = ctx.exp(exponent)
    return BigReal(a, prec)


def _iterate(xv, prec: Precision, max_steps: int):
    """Run ``a_{k+1} = x**a_k`` and track the odd- and even-height subsequences.

    Each subsequence is monotone, so with ``r`` the observed ratio of
    successive increments its distance to the limit is about
    ``|step| * r / (1 - r)``; both estimates must drop below ``2**(-bits/2)``.
    Returns ``(odd_limit, even_limit, steps, converged)``.
    """
    ctx = prec.ctx
    tol = prec.band
    log_x = ctx.log(xv)
    odd, even = xv, ctx.exp(xv * log_x)
    d_odd = d_even = None
    steps = 2
    while steps < max_steps:
        new_odd = ctx.exp(even * log_x)
        new_even = ctx.exp(new_odd * log_x)
        steps += 2
        s_odd, s_even = abs(new_odd - odd), abs(new_even - even)
        odd, even = new_odd, new_even
        done = True
        for step, prev in ((s_odd, d_odd), (s_even, d_even)):
            if step < tol * tol:
                # At the rounding floor: increments are noise.
                continue
            if prev is None or step >= prev:
                done = False
                continue
            r = step / prev
            if step * r / (1 - r) >= tol:
                done = False
        d_odd, d_even = s_odd, s_even
        if done:
            return odd, even, steps, True
    return odd, even, steps, False


def _domain_edges(prec: Precision):
    return _const("e_to_minus_e", prec), _const("e_to_inv_e", prec)


def tower_h(x, prec: Precision = DEFAULT_PRECISION, method: str = "fixed_point") -> TowerValue:
    """The infinite tower ``h(x)``, the solution of ``x**h = h`` in ``[1/e, e]``.

    Defined on ``[e**(-e), e**(1/e)]``. Above the interval the result is
    ``out_of_domain``; below it the odd and even towers split and the call is
    handed to :func:`tower_odd_even`.
    """
    xv = as_mpf(x, prec)
    if xv <= 0:
        raise DomainError("power towers need x > 0")
    low, high = _domain_edges(prec)
    band = prec.band
    if xv > high + band:
        return TowerValue(TowerMode.OUT_OF_DOMAIN, method=method)
    if xv < low - band:
        return tower_odd_even(xv, prec, method)
    boundary = abs(xv - low) <= band or abs(xv - high) <= band

    if method == "iteration":
        odd, even, steps, ok = _iterate(xv, prec, MAX_ITERATIONS)
        return _converged(BigReal((odd + even) / 2, prec), steps, "iteration", ok, boundary)
    if method != "fixed_point":
        raise ValueError(f"unknown method {method!r}")
    ctx = prec.ctx
    if xv >= high:
        return _converged(BigReal(_const("e", prec), prec), boundary=boundary)
    if xv <= low:
        return _converged(BigReal(_const("inv_e", prec), prec), boundary=boundary)
    return _converged(g_inverse(ctx.mpf(xv), "lower", prec), boundary=boundary)


def two_step_fixed_points(x, prec: Precision = DEFAULT_PRECISION) -> list[BigReal]:
    """Roots in ``(0, 1)`` of ``F(y) = x**(x**y) - y``, sorted.

    A uniform grid of :data:`GRID_SIZE` cells is scanned for sign changes and
    each change is refined. There are exactly three roots for
    ``x < e**(-e)`` and one for ``e**(-e) <= x < 1``. Close to ``e**(-e)`` the
    three roots crowd together and may share a grid cell; they are then
    separated around the middle root, which is the one-step fixed point
    ``x**y = y``.
    """
    ctx = prec.ctx
    xv = as_mpf(x, prec)
    if not 0 < xv < 1:
        raise DomainError("two_step_fixed_points needs 0 < x < 1")
    log_x = ctx.log(xv)

    def F(y):
        return ctx.exp(ctx.exp(y * log_x) * log_x) - y

    low = _const("e_to_minus_e", prec)
    expected = 3 if xv < low - prec.band else 1

    roots = []
    prev_y, prev_f = ctx.mpf(0), F(ctx.mpf(0))
    for i in range(1, GRID_SIZE + 1):
        y = ctx.mpf(i) / GRID_SIZE
        fy = F(y)
        if fy == 0:
            roots.append(BigReal(y, prec))
        elif prev_f != 0 and (fy > 0) != (prev_f > 0):
            roots.append(find_root_monotone(F, (prev_y, y), prec))
        prev_y, prev_f = y, fy

    if len(roots) != expected and expected == 3:
        roots = _split_near_threshold(F, xv, prec)
    if len(roots) != expected:
        raise ArithmeticError(
            f"expected {expected} two-step fixed points for x = {ctx.nstr(xv, 10)}, found {len(roots)}"
        )
    return sorted(roots, key=lambda r: r.value)


def _split_near_threshold(F, xv, prec):
    ctx = prec.ctx
    middle = g_inverse(xv, "lower", prec).value
    # F' > 0 at the middle root below e**(-e): F < 0 just left of it, > 0 just right.
    eps = middle / 2
    while F(middle - eps) >= 0:
        eps /= 2
        if eps < prec.eps * middle:
            raise ArithmeticError("outer two-step fixed points not resolvable at this precision")
    lower = find_root_monotone(F, (0, middle - eps), prec)
    eps = (1 - middle) / 2
    while F(middle + eps) <= 0:
        eps /= 2
        if eps < prec.eps:
            raise ArithmeticError("outer two-step fixed points not resolvable at this precision")
    upper = find_root_monotone(F, (middle + eps, 1), prec)
    return [lower, BigReal(middle, prec), upper]


def tower_odd_even(x, prec: Precision = DEFAULT_PRECISION, method: str = "fixed_point") -> TowerValue:
    """Limits of the odd- and even-height finite towers on ``(0, e**(1/e)]``.

    For ``x >= e**(-e)`` both equal ``h(x)``. Below that they split, with
    ``h_odd < h_even``, ``x**h_even = h_odd`` and ``x**h_odd = h_even``.
    """
    xv = as_mpf(x, prec)
    low, high = _domain_edges(prec)
    band = prec.band
    if xv <= 0 or xv > high + band:
        raise DomainError("odd/even towers are defined on 0 < x <= e^(1/e)")
    if xv >= low - band:
        return tower_h(xv, prec, method)

    if method == "iteration":
        odd, even, steps, ok = _iterate(xv, prec, MAX_ITERATIONS)
        return TowerValue(
            TowerMode.SPLIT_ODD_EVEN, None, BigReal(odd, prec), BigReal(even, prec),
            steps, "iteration", ok,
        )
    if method != "fixed_point":
        raise ValueError(f"unknown method {method!r}")
    roots = two_step_fixed_points(xv, prec)
    return TowerValue(TowerMode.SPLIT_ODD_EVEN, None, roots[0], roots[-1])
