"""Algebraic and geometric descriptions of planar self-similar systems.

A system is a list of N contracting ratios in (0, 1) with optional
probability weights; the geometric counterpart is a generatrix, a polygonal
chain whose segments realize those ratios through plane similarities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

WEIGHT_SUM_TOL = 1e-12
ENDPOINT_TOL = 1e-12


@dataclass(frozen=True)
class SelfSimilarSystem:
    """Contractor ratios a_i in (0, 1), N >= 2, with probability weights p_i.

    Contractors are kept in the order given by the user; ``sort_order``
    exposes the ascending permutation used by formulas that refer to the
    smallest/largest ratio.
    """

    contractors: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.contractors) < 2:
            raise ValueError(f"need at least 2 contractors, got {len(self.contractors)}")
        for i, a in enumerate(self.contractors):
            if not (0.0 < a < 1.0):
                raise ValueError(f"contractor {i} out of range (0, 1): {a}")
        if len(self.weights) != len(self.contractors):
            raise ValueError(
                f"{len(self.weights)} weights for {len(self.contractors)} contractors"
            )
        for i, p in enumerate(self.weights):
            if not p > 0.0:
                raise ValueError(f"weight {i} not positive: {p}")
        s = math.fsum(self.weights)
        if abs(s - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {s}, expected 1 within {WEIGHT_SUM_TOL}")

    @property
    def n(self) -> int:
        return len(self.contractors)

    @property
    def sort_order(self) -> tuple[int, ...]:
        """Indices that sort the contractors ascending (stable)."""
        return tuple(int(i) for i in np.argsort(self.contractors, kind="stable"))

    @property
    def sorted_contractors(self) -> tuple[float, ...]:
        return tuple(self.contractors[i] for i in self.sort_order)

    @property
    def a_min(self) -> float:
        return min(self.contractors)

    @property
    def a_max(self) -> float:
        return max(self.contractors)

    @property
    def total_length(self) -> float:
        """L = sum of the contractors: the length of the generatrix."""
        return math.fsum(self.contractors)

    @property
    def uniform_weights(self) -> bool:
        return all(p == self.weights[0] for p in self.weights)

    def argmin(self) -> int:
        """Index (user order) of the smallest contractor, first on ties."""
        return self.sort_order[0]

    def argmax(self) -> int:
        """Index (user order) of the largest contractor, first on ties."""
        return self.sort_order[-1]


def build_system(
    contractors: Sequence[float], weights: Optional[Sequence[float]] = None
) -> SelfSimilarSystem:
    """Validate contractors (and weights, defaulting to uniform 1/N)."""
    contractors = tuple(float(a) for a in contractors)
    if weights is None:
        n = len(contractors)
        if n < 2:
            raise ValueError(f"need at least 2 contractors, got {n}")
        weights = (1.0 / n,) * n
    else:
        weights = tuple(float(p) for p in weights)
    return SelfSimilarSystem(contractors, weights)


def with_weights(system: SelfSimilarSystem, weights: Sequence[float]) -> SelfSimilarSystem:
    return SelfSimilarSystem(system.contractors, tuple(float(p) for p in weights))


@dataclass(frozen=True)
class Generatrix:
    """Normalized polygonal chain A_1 .. A_{N+1} with A_1=(0,0), A_{N+1}=(1,0).

    ``flips`` marks segments whose similarity reflects (defaults to all
    direct).  Construct through :func:`build_generatrix`, which performs the
    normalization.
    """

    vertices: np.ndarray  # shape (N+1, 2)
    flips: tuple[bool, ...]

    def __post_init__(self):
        v = self.vertices
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("generatrix needs at least 3 planar vertices (N >= 2)")
        if len(self.flips) != v.shape[0] - 1:
            raise ValueError("one flip flag per segment expected")
        seg = np.diff(v, axis=0)
        lengths = np.hypot(seg[:, 0], seg[:, 1])
        if np.any(lengths == 0.0):
            raise ValueError("degenerate zero-length segment in generatrix")
        if np.any(lengths >= 1.0):
            raise ValueError("segment length >= 1 after normalization")
        end = v[-1] - v[0]
        if abs(math.hypot(end[0], end[1]) - 1.0) > ENDPOINT_TOL:
            raise ValueError("endpoints not at unit distance after normalization")

    @property
    def n(self) -> int:
        return self.vertices.shape[0] - 1

    @property
    def segment_lengths(self) -> np.ndarray:
        seg = np.diff(self.vertices, axis=0)
        return np.hypot(seg[:, 0], seg[:, 1])


def build_generatrix(
    vertices: Sequence[Sequence[float]], flips: Optional[Sequence[bool]] = None
) -> Generatrix:
    """Normalize a vertex chain so A_1=(0,0) and A_{N+1}=(1,0), then validate."""
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise ValueError("vertices must be a sequence of planar points")
    if v.shape[0] < 2:
        raise ValueError("generatrix needs at least 2 vertices")
    end = v[-1] - v[0]
    span = math.hypot(end[0], end[1])
    if span == 0.0:
        raise ValueError("generatrix endpoints coincide")
    # Rigid motion + uniform scale taking (A_1, A_{N+1}) to ((0,0), (1,0)).
    c, s = end[0] / span, end[1] / span
    rot = np.array([[c, s], [-s, c]]) / span
    v = (v - v[0]) @ rot.T
    v[0] = (0.0, 0.0)
    v[-1] = (1.0, 0.0)
    if flips is None:
        flips = (False,) * (v.shape[0] - 1)
    else:
        flips = tuple(bool(f) for f in flips)
    v.setflags(write=False)
    return Generatrix(v, flips)


@dataclass(frozen=True)
class Similarity2D:
    """Plane similarity z -> translation + scale * R(rotation) * (z or conj z)."""

    scale: float
    rotation: float
    reflect: bool
    translation: np.ndarray  # shape (2,)

    def matrix(self) -> np.ndarray:
        c = self.scale * math.cos(self.rotation)
        s = self.scale * math.sin(self.rotation)
        if self.reflect:
            return np.array([[c, s], [s, -c]])
        return np.array([[c, -s], [s, c]])

    def apply(self, points: np.ndarray) -> np.ndarray:
        return points @ self.matrix().T + self.translation


def _segment_similarity(a: np.ndarray, b: np.ndarray, reflect: bool) -> Similarity2D:
    """The unique similarity mapping (0,0) -> a and (1,0) -> b."""
    d = b - a
    return Similarity2D(
        scale=float(math.hypot(d[0], d[1])),
        rotation=float(math.atan2(d[1], d[0])),
        reflect=reflect,
        translation=a.copy(),
    )


def system_from_generatrix(
    generatrix: Generatrix,
) -> tuple[SelfSimilarSystem, list[Similarity2D]]:
    """Read contractors off the segment lengths and reconstruct each S_i."""
    v = generatrix.vertices
    maps = [
        _segment_similarity(v[i], v[i + 1], generatrix.flips[i])
        for i in range(generatrix.n)
    ]
    system = build_system([m.scale for m in maps])
    return system, maps


def overlap_heuristic(generatrix: Generatrix) -> list[str]:
    """Advisory non-overlap check: flags intersecting open segments of p_1.

    The spectral formulas assume the similarity pieces do not overlap too
    much; that condition is not decidable from a finite description, so this
    only reports pairwise crossings of the open generatrix segments.
    """
    v = generatrix.vertices
    n = generatrix.n
    warnings = []
    for i in range(n):
        for j in range(i + 1, n):
            if _open_segments_intersect(v[i], v[i + 1], v[j], v[j + 1],
                                        adjacent=(j == i + 1)):
                warnings.append(f"segments {i} and {j} of the generatrix intersect")
    return warnings


def _open_segments_intersect(p1, p2, q1, q2, adjacent: bool) -> bool:
    d1 = p2 - p1
    d2 = q2 - q1
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < 1e-15:
        return False
    r = q1 - p1
    t = (r[0] * d2[1] - r[1] * d2[0]) / denom
    u = (r[0] * d1[1] - r[1] * d1[0]) / denom
    eps = 1e-12
    if adjacent:
        # Consecutive segments share a vertex; only interior crossings count.
        return eps < t < 1 - eps and eps < u < 1 - eps
    return -eps < t < 1 + eps and -eps < u < 1 + eps
