#!/usr/bin/env python3
"""Analytic dimensions of self-similar curves.

Walks through the two closed-form endpoints of the dimensional spectrum —
the divider dimension d_min = 1 + log L / log(1/a_min) and the Hausdorff
dimension d_max solving sum a_i^d = 1 — for a few contractor families,
including the two four-map families whose d_min/D_1 ordering flips.
"""

import math

import fractspec as fs
from fractspec.solve import bisect_decreasing


def show(name, system):
    print(f"\n{name}: contractors {tuple(round(a, 6) for a in system.contractors)}")
    print(f"  L (generatrix length) = {system.total_length:.6f}")
    print(f"  d_min (divider dim)   = {fs.mf_dim_min(system):.10f}")
    print(f"  d_max (Hausdorff dim) = {fs.mf_dim_max(system):.10f}")
    print(f"  D_1  (information)    = {fs.information_dim(system):.10f}")
    for entry in fs.discrete_mf_spectrum(system):
        value = "bracketed" if entry.value is None else f"{entry.value:.10f}"
        print(f"  contractor {entry.contractor:.6f} -> {value}")


def main():
    show("Square-hump family (1/4 x 4, 1/2)", fs.build_system([0.25] * 4 + [0.5]))
    show("Three-scale system", fs.build_system([1 / 7, 1 / 7, 1 / 7, 2 / 7, 4 / 7]))

    # Family a, b = a^p with 2a + a^p = 1: the relative order of d_min and
    # D_1 depends on p.
    for p in (2.0, 1.5):
        a = bisect_decreasing(lambda t: 1 - 2 * t - t ** p, 0.0, 0.5, residual=1e-14)
        system = fs.build_system([a, a ** p, a ** p, a])
        show(f"p = {p} family (2a + a^{p} = 1)", system)
        d_min, d1 = fs.mf_dim_min(system), fs.information_dim(system)
        order = "d_min < D_1" if d_min < d1 else "d_min > D_1"
        print(f"  ordering: {order}")


if __name__ == "__main__":
    main()
