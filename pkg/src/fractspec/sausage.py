"""Empirical dimension estimation from neighborhood areas of expanded polylines.

The area of the epsilon-neighborhood of each expanded polyline is measured
on a raster (a cell counts when its center lies within epsilon of the
polyline) and regressed against the log of the diameter; the slope
estimates the dimension that the analytic formulas predict.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from .errors import CapExceededError
from .ifs import Generatrix
from .prefractal import ExpansionSchedule, Polyline, diameter, expand

CELL_CAP = 4 * 10**8
SEGMENT_CAP = 10**7


def _default_cell_cap() -> int:
    """Raster cap, overridable through the FRACTSPEC_CELL_CAP environment variable."""
    raw = os.environ.get("FRACTSPEC_CELL_CAP")
    if raw is None:
        return CELL_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"FRACTSPEC_CELL_CAP must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise ValueError(f"FRACTSPEC_CELL_CAP must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class SausageSample:
    """One (depth, area, diameter) measurement."""

    depth: int
    epsilon: float
    area: float
    delta: float


@dataclass(frozen=True)
class DimEstimate:
    """Log-log regression slope of area against diameter."""

    slope: float
    stderr: float
    samples: tuple[SausageSample, ...]


def _segment_distances(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact distances from an array of points to the segment a-b."""
    d = b - a
    len2 = float(d @ d)
    if len2 == 0.0:
        diff = points - a
        return np.hypot(diff[:, 0], diff[:, 1])
    t = np.clip((points - a) @ d / len2, 0.0, 1.0)
    proj = a + t[:, None] * d
    diff = points - proj
    return np.hypot(diff[:, 0], diff[:, 1])


def sausage_area(
    polyline: Polyline,
    epsilon: float,
    cell_size: Optional[float] = None,
    cell_cap: Optional[int] = None,
) -> float:
    """Raster estimate of the area of the epsilon-neighborhood of a polyline.

    A cell of the axis-aligned grid (anchored at the inflated bounding-box
    corner) counts exactly when its center is within epsilon of the nearest
    segment, so the result is deterministic for fixed inputs.  Cells are
    visited segment by segment and deduplicated, which touches only the
    cells near the curve instead of the full grid.
    """
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if cell_cap is None:
        cell_cap = _default_cell_cap()
    if cell_size is None:
        cell_size = epsilon / 4.0
    if cell_size > epsilon / 4.0 * (1.0 + 1e-12):
        raise ValueError(f"cell_size {cell_size} exceeds epsilon/4 = {epsilon / 4.0}")
    verts = polyline.vertices
    if verts.shape[0] < 2:
        raise ValueError("polyline needs at least 2 vertices")

    x0, y0 = verts.min(axis=0) - epsilon
    x1, y1 = verts.max(axis=0) + epsilon
    nx = int(math.ceil((x1 - x0) / cell_size))
    ny = int(math.ceil((y1 - y0) / cell_size))
    if nx * ny > cell_cap:
        raise CapExceededError(
            f"raster of {nx}x{ny} cells exceeds cap {cell_cap}; "
            "coarsen cell_size or raise the cap"
        )

    marked: set[int] = set()
    for i in range(verts.shape[0] - 1):
        a, b = verts[i], verts[i + 1]
        lo = np.minimum(a, b) - epsilon
        hi = np.maximum(a, b) + epsilon
        ix0 = max(int((lo[0] - x0) / cell_size), 0)
        iy0 = max(int((lo[1] - y0) / cell_size), 0)
        ix1 = min(int((hi[0] - x0) / cell_size) + 1, nx)
        iy1 = min(int((hi[1] - y0) / cell_size) + 1, ny)
        if ix1 <= ix0 or iy1 <= iy0:
            continue
        xs = x0 + (np.arange(ix0, ix1) + 0.5) * cell_size
        ys = y0 + (np.arange(iy0, iy1) + 0.5) * cell_size
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        centers = np.column_stack([gx.ravel(), gy.ravel()])
        dist = _segment_distances(centers, a, b)
        inside = dist <= epsilon
        if inside.any():
            cols, rows = np.meshgrid(
                np.arange(ix0, ix1), np.arange(iy0, iy1), indexing="ij"
            )
            lin = cols.ravel()[inside] * ny + rows.ravel()[inside]
            marked.update(lin.tolist())
    return len(marked) * cell_size * cell_size


def sausage_area_bruteforce(
    polyline: Polyline, epsilon: float, cell_size: float
) -> float:
    """Oracle: full-grid scan against every segment (small instances only)."""
    verts = polyline.vertices
    x0, y0 = verts.min(axis=0) - epsilon
    x1, y1 = verts.max(axis=0) + epsilon
    nx = int(math.ceil((x1 - x0) / cell_size))
    ny = int(math.ceil((y1 - y0) / cell_size))
    xs = x0 + (np.arange(nx) + 0.5) * cell_size
    ys = y0 + (np.arange(ny) + 0.5) * cell_size
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    centers = np.column_stack([gx.ravel(), gy.ravel()])
    best = np.full(centers.shape[0], np.inf)
    for i in range(verts.shape[0] - 1):
        best = np.minimum(best, _segment_distances(centers, verts[i], verts[i + 1]))
    return int(np.count_nonzero(best <= epsilon)) * cell_size * cell_size


def estimate_mf_dim(
    generatrix: Generatrix,
    schedule: ExpansionSchedule,
    k_range: Sequence[int],
    epsilon: float,
    cell_size: Optional[float] = None,
    cell_cap: Optional[int] = None,
    segment_cap: int = SEGMENT_CAP,
) -> DimEstimate:
    """Regress log(area) on log(diameter) across expanded depths.

    The expanded diameters grow geometrically, so the least-squares slope of
    the log-log samples estimates the dimension of the limiting curve.
    """
    depths = sorted(set(int(k) for k in k_range))
    if len(depths) < 3:
        raise ValueError(f"need at least 3 depths, got {depths}")
    samples = []
    for k in depths:
        expanded = expand(generatrix, schedule, k, segment_cap=segment_cap)
        delta = diameter(expanded.polyline)
        area = sausage_area(expanded.polyline, epsilon, cell_size, cell_cap=cell_cap)
        samples.append(SausageSample(depth=k, epsilon=epsilon, area=area, delta=delta))
    log_delta = np.log([s.delta for s in samples])
    log_area = np.log([s.area for s in samples])
    fit = stats.linregress(log_delta, log_area)
    return DimEstimate(slope=float(fit.slope), stderr=float(fit.stderr),
                       samples=tuple(samples))
