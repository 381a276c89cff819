"""Prefractal polylines, composition censuses, and expanded polylines.

``iterate`` refines a generatrix into the depth-k polygonal with N^k
segments; ``expand`` rescales that polygonal by a per-step choice of
expansion factors 1/a_i and re-anchors it so each expanded polyline nests
inside the next one (inheritance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Sequence

import numpy as np

from .errors import CapExceededError
from .ifs import Generatrix, SelfSimilarSystem, Similarity2D, system_from_generatrix

SEGMENT_CAP = 10**7
CENSUS_CAP = 2 * 10**6
LENGTH_GROUP_RTOL = 1e-12
# Guard added inside floor(lam * k): mix exponents such as 1/2 arrive one ulp
# low from the log-ratio arithmetic, which would silently drop a scheduled step.
FLOOR_GUARD = 1e-9


@dataclass(frozen=True)
class Polyline:
    """Ordered planar vertex chain at iteration depth k."""

    vertices: np.ndarray  # shape (n, 2)
    depth: int

    @property
    def segment_count(self) -> int:
        return self.vertices.shape[0] - 1

    @property
    def segment_lengths(self) -> np.ndarray:
        seg = np.diff(self.vertices, axis=0)
        return np.hypot(seg[:, 0], seg[:, 1])


@dataclass(frozen=True)
class ExpansionSchedule:
    """Per-step expansor choice: explicit indices, or a two-index mix.

    ``steps`` holds 0-based contractor indices.  A mix schedule is the pair
    (index_small, index_large) plus the mix exponent lam in [0, 1]: step k
    uses the small contractor's expansor exactly when floor(lam*k) increments,
    so the small-expansor count after k steps is floor(lam*k).
    """

    steps: Optional[tuple[int, ...]] = None
    mix: Optional[tuple[int, int, float]] = None

    def __post_init__(self):
        if (self.steps is None) == (self.mix is None):
            raise ValueError("provide exactly one of steps or mix")
        if self.mix is not None:
            i, j, lam = self.mix
            if not (0.0 <= lam <= 1.0):
                raise ValueError(f"mix exponent out of [0, 1]: {lam}")

    def step(self, k: int) -> int:
        """Contractor index used at step k (1-based step count)."""
        if k < 1:
            raise ValueError("steps are counted from 1")
        if self.steps is not None:
            if k > len(self.steps):
                raise ValueError(f"schedule has only {len(self.steps)} steps")
            return self.steps[k - 1]
        i_small, i_large, lam = self.mix
        if math.floor(lam * k + FLOOR_GUARD) > math.floor(lam * (k - 1) + FLOOR_GUARD):
            return i_small
        return i_large

    def steps_for(self, k: int) -> tuple[int, ...]:
        return tuple(self.step(j) for j in range(1, k + 1))


@dataclass(frozen=True)
class ExpandedPolyline:
    """Depth-k expanded polyline with its cumulative expansion factor E_k."""

    polyline: Polyline
    cumulative_expansion: float
    anchor_index: int  # vertex index where the previous expanded polyline starts


@dataclass(frozen=True)
class CompositionCensus:
    """Exact segment-length census of p_k, keyed by composition vectors.

    ``entries`` maps each composition r (r_i = number of times contractor i
    occurs in a length-k index word) to (count, segment length), where count
    is the multinomial coefficient k!/(r_1!...r_N!).
    """

    depth: int
    entries: dict[tuple[int, ...], tuple[int, float]]

    @property
    def total_count(self) -> int:
        return sum(c for c, _ in self.entries.values())

    def grouped_by_length(self) -> list[tuple[float, int]]:
        """Merge compositions of (relatively) equal length, ascending."""
        items = sorted((length, count) for count, length in self.entries.values())
        groups: list[tuple[float, int]] = []
        for length, count in items:
            if groups and abs(length - groups[-1][0]) <= LENGTH_GROUP_RTOL * groups[-1][0]:
                groups[-1] = (groups[-1][0], groups[-1][1] + count)
            else:
                groups.append((length, count))
        return groups


def iterate(generatrix: Generatrix, k: int, segment_cap: int = SEGMENT_CAP) -> Polyline:
    """Depth-k prefractal p_k = union of S_i(p_{k-1}); p_1 is the generatrix."""
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    n = generatrix.n
    if n**k > segment_cap:
        raise CapExceededError(f"{n}^{k} segments exceed cap {segment_cap}")
    _, maps = system_from_generatrix(generatrix)
    mats = [m.matrix().T for m in maps]
    trans = [m.translation for m in maps]
    verts = generatrix.vertices
    for _ in range(k - 1):
        pieces = []
        for i in range(n):
            img = verts @ mats[i] + trans[i]
            pieces.append(img[:-1] if i < n - 1 else img)
        verts = np.concatenate(pieces, axis=0)
    return Polyline(verts, depth=k)


def census(system: SelfSimilarSystem, k: int, cap: int = CENSUS_CAP) -> CompositionCensus:
    """Analytic census of p_k: multinomial counts per composition vector."""
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    n = system.n
    if math.comb(k + n - 1, n - 1) > cap:
        raise CapExceededError(
            f"{math.comb(k + n - 1, n - 1)} compositions exceed cap {cap}"
        )
    log_a = [math.log(a) for a in system.contractors]
    entries: dict[tuple[int, ...], tuple[int, float]] = {}
    for combo in combinations_with_replacement(range(n), k):
        r = [0] * n
        for i in combo:
            r[i] += 1
        count = math.factorial(k)
        for ri in r:
            count //= math.factorial(ri)
        length = math.exp(sum(ri * la for ri, la in zip(r, log_a)))
        entries[tuple(r)] = (count, length)
    return CompositionCensus(depth=k, entries=entries)


def _inverse(m: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mi = np.linalg.inv(m)
    return mi, -mi @ t


def expand(
    generatrix: Generatrix,
    schedule: ExpansionSchedule,
    k: int,
    segment_cap: int = SEGMENT_CAP,
) -> ExpandedPolyline:
    """Expanded polyline p'_k: p_k scaled by E_k and re-anchored for nesting.

    p'_1 is the generatrix scaled by the first expansor.  For k >= 2 the
    polyline is mapped by Phi_k = Phi_{k-1} o S_{s_k}^{-1}, a similarity of
    ratio E_k; then Phi_k(S_{s_k}(p_{k-1})) = p'_{k-1}, so every vertex of the
    previous expanded polyline reappears among the vertices of the new one
    (the inherited block starts at ``anchor_index``).
    """
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    system, maps = system_from_generatrix(generatrix)
    n = system.n
    steps = schedule.steps_for(k)
    for s in steps:
        if not 0 <= s < n:
            raise ValueError(f"schedule index {s} out of range for N={n}")
    pk = iterate(generatrix, k, segment_cap=segment_cap)

    expansion = 1.0
    for s in steps:
        expansion /= system.contractors[s]
    # Phi_1 = (1/a_{s_1}) * identity; Phi_j = Phi_{j-1} o S_{s_j}^{-1}.
    phi_m = np.eye(2) / system.contractors[steps[0]]
    phi_t = np.zeros(2)
    for s in steps[1:]:
        mi, ti = _inverse(maps[s].matrix(), maps[s].translation)
        phi_m, phi_t = phi_m @ mi, phi_m @ ti + phi_t
    verts = pk.vertices @ phi_m.T + phi_t
    anchor = (steps[-1]) * n ** (k - 1) if k >= 2 else 0
    return ExpandedPolyline(
        polyline=Polyline(verts, depth=k),
        cumulative_expansion=expansion,
        anchor_index=anchor,
    )


def diameter(polyline: Polyline | np.ndarray) -> float:
    """Maximum pairwise vertex distance (the convex-hull diameter)."""
    verts = polyline.vertices if isinstance(polyline, Polyline) else np.asarray(polyline)
    if verts.shape[0] < 2:
        raise ValueError("diameter needs at least 2 vertices")
    if verts.shape[0] > 1000:
        verts = _hull_vertices(verts)
    return diameter_bruteforce(verts)


def diameter_bruteforce(verts: np.ndarray) -> float:
    """O(n^2) pairwise maximum; the oracle for the hull-reduced path."""
    d2 = np.sum((verts[:, None, :] - verts[None, :, :]) ** 2, axis=-1)
    return float(math.sqrt(d2.max()))


def _hull_vertices(verts: np.ndarray) -> np.ndarray:
    from scipy.spatial import ConvexHull, QhullError

    try:
        hull = ConvexHull(verts)
        return verts[hull.vertices]
    except QhullError:
        # Collinear input: the extremes along the spanning direction suffice.
        centered = verts - verts.mean(axis=0)
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        proj = centered @ vt[0]
        return verts[[int(proj.argmin()), int(proj.argmax())]]


def unit_segment_count(expanded: ExpandedPolyline, tol: float = 1e-9) -> int:
    """Number of segments whose length is 1 within tol."""
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tol out of (0, 0.5): {tol}")
    lengths = expanded.polyline.segment_lengths
    return int(np.count_nonzero(np.abs(lengths - 1.0) <= tol))
