"""Analytic dimensions of a self-similar system.

The similarity equation sum a_i^d = 1 gives the Hausdorff dimension, which
is also the largest dimension reached by the expanded versions of the
curve; the smallest one has the closed form 1 + log L / log(1/a_min) and
coincides with the divider (compass) dimension.  ``schedule_for``
synthesizes a two-expansor mix whose cumulative expansion realizes any
intermediate scaling ratio.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .ifs import SelfSimilarSystem
from .prefractal import ExpansionSchedule
from .solve import bisect_decreasing

BISECTION_BRACKET = (0.0, 64.0)
ROOT_RESIDUAL = 1e-13


def hausdorff_dim(system: SelfSimilarSystem) -> float:
    """The unique d with sum a_i^d = 1 (bisection; the sum is decreasing in d)."""
    log_a = [math.log(a) for a in system.contractors]

    def residual(d: float) -> float:
        return math.fsum(math.exp(d * la) for la in log_a) - 1.0

    lo, hi = BISECTION_BRACKET
    return bisect_decreasing(residual, lo, hi, residual=ROOT_RESIDUAL)


def mf_dim_max(system: SelfSimilarSystem) -> float:
    """Largest dimension of the expanded-curve spectrum: equals hausdorff_dim."""
    return hausdorff_dim(system)


def mf_dim_min(system: SelfSimilarSystem) -> float:
    """Smallest dimension of the spectrum: 1 + log L / log(1/a_min)."""
    length = system.total_length
    if length <= 1.0:
        warnings.warn(
            f"generatrix length L = {length} <= 1: system is not a fractal curve "
            "(dimension <= 1)",
            stacklevel=2,
        )
    return 1.0 + math.log(length) / math.log(1.0 / system.a_min)


def divider_dim(system: SelfSimilarSystem) -> float:
    """Divider (compass) dimension; identical to mf_dim_min."""
    return mf_dim_min(system)


@dataclass(frozen=True)
class DiscreteSpectrumEntry:
    """Dimension attached to one distinct contractor value."""

    contractor: float
    value: Optional[float]  # analytic value when known (extremes only)
    bracket: tuple[float, float]


def discrete_mf_spectrum(system: SelfSimilarSystem) -> list[DiscreteSpectrumEntry]:
    """Per-contractor dimension report, ascending in the contractor.

    Only the extremes have closed forms; intermediate contractors get the
    bracketing interval [d_min, d_max] (an empirical estimate can be attached
    via the sausage module).
    """
    d_lo = mf_dim_min(system)
    d_hi = mf_dim_max(system)
    distinct = sorted(set(system.contractors))
    entries = []
    for a in distinct:
        value = None
        if a == distinct[0]:
            value = d_lo
        if a == distinct[-1]:
            value = d_hi  # single distinct contractor: d_lo == d_hi
        entries.append(DiscreteSpectrumEntry(a, value, (d_lo, d_hi)))
    return entries


def mix_exponent(b: float, a: float, c: float) -> float:
    """Solve b^lam * a^(1-lam) = c for lam in [0, 1], given 0 < b <= c <= a < 1."""
    if not (0.0 < b < a < 1.0):
        raise ValueError(f"need 0 < b < a < 1, got b={b}, a={a}")
    if not (b <= c <= a):
        raise ValueError(f"c={c} outside [{b}, {a}]")
    return math.log(c / a) / math.log(b / a)


def schedule_for(system: SelfSimilarSystem, c: float) -> ExpansionSchedule:
    """Mix schedule over the two extreme expansors realizing ratio 1/c per step.

    Only the smallest and largest contractors are needed: the mix exponent
    lam makes the cumulative expansion satisfy E_k^(1/k) -> 1/c, with the
    small-contractor expansor used floor(lam*k) times in the first k steps.
    """
    i_small = system.argmin()
    i_large = system.argmax()
    b, a = system.a_min, system.a_max
    if not (b <= c <= a):
        raise ValueError(f"target ratio {c} outside [{b}, {a}]")
    if b == a:
        if c != b:
            raise ValueError(f"target ratio {c} outside [{b}, {a}]")
        return ExpansionSchedule(mix=(i_small, i_large, 0.0))
    lam = mix_exponent(b, a, c)
    return ExpansionSchedule(mix=(i_small, i_large, lam))
