#!/usr/bin/env python3
"""Conjugation demo: tabulate f^c and f^cc for a few catalog functions and
show convergence of the discrete conjugate of x^2/2 to y^2/2.

Usage: python3 scripts/transform_demo.py
"""

import sys

import numpy as np

from cconvex.costs import CostSpec, tabulate_cost
from cconvex.grids import GridFunction, make_uniform_grid
from cconvex.transform import c_transform, double_c_transform, is_c_convex


def main() -> int:
    print("self-conjugacy of x^2/2 under the bilinear cost")
    print(f"{'n':>6s} {'sup error':>12s}")
    for n in (65, 129, 257, 513, 1025):
        g = make_uniform_grid(-1, 1, n)
        cost = tabulate_cost(CostSpec("bilinear"), g, g)
        f = GridFunction(g, 0.5 * g.points**2)
        fc = c_transform(f, cost)
        err = np.abs(fc.values.values - 0.5 * g.points**2).max()
        print(f"{n:6d} {err:12.3e}")

    print("\nbiconjugate envelopes on [-1, 1], n = 257")
    g = make_uniform_grid(-1, 1, 257)
    cost = tabulate_cost(CostSpec("bilinear"), g, g)
    catalog = {
        "x^2": g.points**2,
        "-x^2": -g.points**2,
        "|x|": np.abs(g.points),
        "-|x|": -np.abs(g.points),
        "sin(3x)": np.sin(3 * g.points),
    }
    for name, vals in catalog.items():
        f = GridFunction(g, vals)
        fcc = double_c_transform(f, cost).values
        holds, dev = is_c_convex(f, cost)
        drop = np.abs(f.values - fcc.values).max()
        print(f"  {name:8s} c-convex={str(holds):5s} deviation={dev:.3e} "
              f"max f - f^cc = {drop:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
