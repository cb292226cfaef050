"""c-transform, double c-transform, c-convexity test, a linear-time
Fenchel conjugate for the bilinear cost, and the c-concave involution.

All suprema are taken over grid points only, with a fixed lowest-index
tie-break shared by the brute-force and fast paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .costs import CostMatrix
from .grids import Grid, GridFunction, sup_norm_diff

__all__ = [
    "TransformResult",
    "c_transform",
    "double_c_transform",
    "is_c_convex",
    "default_cconvexity_tol",
    "fenchel_conjugate_fast",
    "to_concave_problem",
]


@dataclass(frozen=True, eq=False)
class TransformResult:
    """Transform values on the opposite grid plus per-point optimizer indices."""

    values: GridFunction
    argmax: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.argmax, dtype=np.int64)
        if a.shape != (self.values.grid.n,):
            raise ValueError("argmax length must match the output grid")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "argmax", a)


def _check_input(f: GridFunction, cost: CostMatrix):
    if f.grid != cost.grid_i:
        raise ValueError("cost grid does not match the function's grid on the I side")
    if not np.isfinite(f.values).any():  # pragma: no cover - GridFunction already forbids
        raise ValueError("improper input: f is +inf everywhere")


def c_transform(f: GridFunction, cost: CostMatrix) -> TransformResult:
    """f^c(y_j) = max_i { c(x_i, y_j) - f(x_i) }, first maximizing index kept.

    Grid points where f = +inf contribute -inf and are skipped by the max.
    """
    _check_input(f, cost)
    with np.errstate(invalid="ignore"):
        d = cost.entries - f.values[:, None]  # -inf rows where f = +inf
    values = d.max(axis=0)
    argmax = d.argmax(axis=0)
    return TransformResult(GridFunction(cost.grid_j, values), argmax)


def double_c_transform(f: GridFunction, cost: CostMatrix) -> TransformResult:
    """f^cc = (f^c)^c taken back through the same cost with the variables swapped."""
    fc = c_transform(f, cost)
    d = cost.entries - fc.values.values[None, :]
    values = d.max(axis=1)
    argmax = d.argmax(axis=1)
    return TransformResult(GridFunction(cost.grid_i, values), argmax)


def default_cconvexity_tol(f: GridFunction) -> float:
    """1e-7 * (1 + ||f||_inf) + 4 * h * Lhat, Lhat the max slope quotient."""
    finite = f.values[np.isfinite(f.values)]
    return 1e-7 * (1.0 + float(np.abs(finite).max())) + 4.0 * f.grid.h * f.max_slope()


def is_c_convex(f: GridFunction, cost: CostMatrix, tol: float | None = None) -> tuple[bool, float]:
    """f is c-convex iff f = f^cc; returns (holds, sup-norm deviation)."""
    if not f.is_finite:
        raise ValueError("is_c_convex requires an everywhere-finite f")
    if tol is None:
        tol = default_cconvexity_tol(f)
    fcc = double_c_transform(f, cost).values
    deviation = sup_norm_diff(f, fcc)
    return deviation <= tol, deviation


def _lower_hull(x: np.ndarray, v: np.ndarray) -> list[int]:
    """Indices of the lower convex hull of (x_i, v_i), keeping collinear points."""
    hull: list[int] = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # pop b when slope(a,b) strictly exceeds slope(b,i)
            if (v[b] - v[a]) * (x[i] - x[b]) > (v[i] - v[b]) * (x[b] - x[a]):
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def fenchel_conjugate_fast(f: GridFunction, grid_j: Grid) -> TransformResult:
    """Conjugate for c(x, y) = x*y in O(n + m).

    Walks a pointer along the lower convex hull of (x_i, f_i): the
    lowest-index maximizer of x*y - f(x) is nondecreasing in y, and along
    the hull the objective is unimodal, so a strict-improvement climb
    reproduces the brute-force lowest-index tie-break.
    """
    if not f.is_finite:
        raise ValueError("fenchel_conjugate_fast requires an everywhere-finite f")
    x = f.grid.points
    v = f.values
    hull = _lower_hull(x, v)
    ys = grid_j.points
    values = np.empty(grid_j.n)
    argmax = np.empty(grid_j.n, dtype=np.int64)
    k = 0
    for j, y in enumerate(ys):
        cur = x[hull[k]] * y - v[hull[k]]
        while k + 1 < len(hull):
            nxt = x[hull[k + 1]] * y - v[hull[k + 1]]
            if nxt > cur:
                k += 1
                cur = nxt
            else:
                break
        values[j] = cur
        argmax[j] = hull[k]
    return TransformResult(GridFunction(grid_j, values), argmax)


def to_concave_problem(f: GridFunction, cost: CostMatrix) -> tuple[GridFunction, CostMatrix]:
    """Involution routing c-concavity queries through the c-convex machinery.

    f is c-concave w.r.t. cost iff -f is c-convex w.r.t. -cost.
    """
    if not f.is_finite:
        raise ValueError("to_concave_problem requires an everywhere-finite f")
    return GridFunction(f.grid, -f.values), cost.negated()
