#!/usr/bin/env python3
"""Renyi generalized dimensions D_q of a self-similar measure.

Tabulates D_q over a range of orders for the length-normalized measure
(weights p_i = a_i / L), illustrating the identification of the spectrum
endpoints: d_min = D_{+inf} and d_max = D_0.
"""

import math

import numpy as np

import fractspec as fs


def main():
    system = fs.build_system([0.25] * 4 + [0.5])
    length = system.total_length
    weighted = fs.with_weights(system, [a / length for a in system.contractors])

    print("q        D_q")
    for q in np.concatenate([np.arange(-10, 11, 2.0), [math.inf]]):
        print(f"{q:+6.1f}  {fs.renyi(weighted, float(q)):.10f}")

    report = fs.case_a_identification(system)
    print("\nLength-normalized measure identities:")
    print(f"  D_+inf = {report.d_infinity:.10f}  vs d_min = {report.d_min:.10f}")
    print(f"  D_0    = {report.d_zero:.10f}  vs d_max = {report.d_max:.10f}")
    print(f"  identities hold: {report.identities_hold}")


if __name__ == "__main__":
    main()
