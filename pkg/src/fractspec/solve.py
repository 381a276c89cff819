"""Bisection on monotone scalar functions.

Every transcendental equation in this package is strictly monotone in its
unknown, so plain bisection (optionally with an expanding initial bracket)
converges unconditionally and needs no derivatives.
"""

from __future__ import annotations

from typing import Callable

from .errors import SolverError


def bisect_decreasing(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    residual: float = 1e-13,
    max_iter: int = 200,
) -> float:
    """Root of a continuous strictly decreasing fn with fn(lo) >= 0 >= fn(hi)."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo < 0.0 or fhi > 0.0:
        raise SolverError(f"bracket [{lo}, {hi}] does not straddle the root")
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if abs(fmid) < residual:
            return mid
        if fmid > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4e-16 * max(1.0, abs(mid)):
            break
    if abs(fn(mid)) > 1e3 * residual:
        raise SolverError(f"bisection stalled at {mid}, residual {fn(mid)}")
    return mid


def expand_bracket_decreasing(
    fn: Callable[[float], float],
    lo: float = -1.0,
    hi: float = 1.0,
    max_doublings: int = 200,
) -> tuple[float, float]:
    """Grow [lo, hi] outward until a strictly decreasing fn changes sign."""
    width = hi - lo
    for _ in range(max_doublings):
        if fn(lo) >= 0.0 >= fn(hi):
            return lo, hi
        width *= 2.0
        if fn(lo) < 0.0:
            lo -= width
        if fn(hi) > 0.0:
            hi += width
    raise SolverError("no sign change found while expanding bracket")
