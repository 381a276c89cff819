#!/usr/bin/env python3
"""Prefractal polylines, expansion schedules, and censuses.

Builds Koch and square-hump prefractals, expands them under constant and
mixed schedules (showing the inheritance nesting and unit-segment counts),
prints the exact depth-2 segment census, and exports an SVG of the Koch
curve via the CLI renderer.
"""

import math
from pathlib import Path

import numpy as np

import fractspec as fs
from fractspec.cli import _write_svg

OUT = Path(__file__).resolve().parent / "out"

KOCH = fs.build_generatrix(
    [(0, 0), (1 / 3, 0), (0.5, math.sqrt(3) / 6), (2 / 3, 0), (1, 0)]
)
HUMP = fs.build_generatrix(
    [(0, 0), (0.25, 0), (0.25, 0.25), (0.5, 0.25), (0.5, 0), (1, 0)]
)


def main():
    OUT.mkdir(exist_ok=True)
    for k in (1, 2, 3, 4):
        p = fs.iterate(KOCH, k)
        print(f"Koch p_{k}: {p.segment_count} segments, "
              f"length {p.segment_lengths.sum():.6f}")
    _write_svg(OUT / "koch_p5.svg", fs.iterate(KOCH, 5))
    print(f"wrote {OUT / 'koch_p5.svg'}")

    system, _ = fs.system_from_generatrix(HUMP)
    print("\nSquare-hump depth-2 census (length, count):")
    for length, count in fs.census(system, 2).grouped_by_length():
        print(f"  {length:.6f}  {count}")

    print("\nUnit segments of p_2 under different expansions:")
    for steps in [(0, 0), (0, 4), (4, 4)]:
        expanded = fs.expand(HUMP, fs.ExpansionSchedule(steps=steps), 2)
        print(f"  E = {expanded.cumulative_expansion:5.1f} -> "
              f"{fs.unit_segment_count(expanded)} unit segments")

    # Mixed schedule targeting an intermediate ratio c: only the extreme
    # expansors are used, and each expanded polyline nests in the next.
    c = math.sqrt(system.a_min * system.a_max)
    schedule = fs.schedule_for(system, c)
    previous = None
    print(f"\nMix schedule for c = {c:.6f}:")
    for k in range(1, 6):
        expanded = fs.expand(HUMP, schedule, k)
        verts = expanded.polyline.vertices
        nested = True
        if previous is not None:
            tol = 1e-9 * expanded.cumulative_expansion
            nested = all(
                np.min(np.hypot(*(verts - v).T)) <= tol for v in previous
            )
        print(f"  k = {k}: E_k = {expanded.cumulative_expansion:9.3f}, "
              f"E_k^(1/k) = {expanded.cumulative_expansion ** (1 / k):.6f}, "
              f"nests previous: {nested}")
        previous = verts


if __name__ == "__main__":
    main()
