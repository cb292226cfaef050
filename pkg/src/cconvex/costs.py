"""Built-in cost families, tabulation onto product grids, and numerical
detection of the structural properties (1/2-affine, 1/2-concave, 1-convex)
that the structural checks hypothesize.

Families:
    bilinear        c(x, y) = x*y
    one_affine      c(x, y) = a(y)*x + b(y), a and b polynomials
    neg_quadratic   c(x, y) = -s*(x - y)^2, s > 0
    reflector       c(x, y) = -log(1 - x*y), requires x*y < 1
    translation     c(x, y) = h(x - y) for a user-supplied h
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .grids import Grid

__all__ = [
    "COST_FAMILIES",
    "STRUCTURE_PROPERTIES",
    "CostDomainError",
    "CostSpec",
    "CostMatrix",
    "StructureVerdict",
    "evaluate_cost",
    "cost_dx",
    "tabulate_cost",
    "tabulate_callable",
    "check_structure",
    "segment_concavity_excess",
    "read_cost_csv",
    "write_cost_csv",
]

COST_FAMILIES = ("bilinear", "one_affine", "neg_quadratic", "reflector", "translation")
STRUCTURE_PROPERTIES = ("one_affine", "two_affine", "one_concave", "one_convex", "two_concave")


class CostDomainError(ValueError):
    """A cost was evaluated outside its declared domain."""

    def __init__(self, x: float, y: float, message: str):
        super().__init__(f"{message} at (x={x}, y={y})")
        self.x = x
        self.y = y


@dataclass(frozen=True)
class CostSpec:
    """Analytic cost family with family-specific parameters.

    ``one_affine`` takes ascending polynomial coefficients for a(y) and b(y);
    ``neg_quadratic`` a positive scale; ``translation`` a callable h.
    """

    family: str
    a_coeffs: tuple = ()
    b_coeffs: tuple = ()
    scale: float = 1.0
    h: Optional[Callable] = None

    def __post_init__(self):
        if self.family not in COST_FAMILIES:
            raise ValueError(f"unknown cost family {self.family!r}")
        if self.family == "neg_quadratic" and not self.scale > 0:
            raise ValueError("neg_quadratic needs scale > 0")
        if self.family == "one_affine" and not (self.a_coeffs or self.b_coeffs):
            raise ValueError("one_affine needs polynomial coefficients for a(y) or b(y)")
        if self.family == "translation" and self.h is None:
            raise ValueError("translation needs a callable h")


def evaluate_cost(spec: CostSpec, x, y):
    """Evaluate c(x, y); broadcasts over array arguments."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fam = spec.family
    if fam == "bilinear":
        out = x * y
    elif fam == "one_affine":
        a = npoly.polyval(y, spec.a_coeffs) if spec.a_coeffs else np.zeros_like(y)
        b = npoly.polyval(y, spec.b_coeffs) if spec.b_coeffs else np.zeros_like(y)
        out = a * x + b
    elif fam == "neg_quadratic":
        out = -spec.scale * (x - y) ** 2
    elif fam == "reflector":
        p = x * y
        if np.any(p >= 1.0):
            xb, yb = np.broadcast_arrays(x, y)
            idx = tuple(np.argwhere(np.atleast_1d(p) >= 1.0)[0])
            xv = float(np.atleast_1d(xb)[idx])
            yv = float(np.atleast_1d(yb)[idx])
            raise CostDomainError(xv, yv, "reflector cost requires x*y < 1")
        out = -np.log1p(-p)
    elif fam == "translation":
        out = np.asarray(spec.h(x - y), dtype=float)
    else:  # pragma: no cover
        raise ValueError(fam)
    if out.ndim == 0:
        return float(out)
    return out


def cost_dx(spec: CostSpec, x, y):
    """Closed-form partial derivative of c in its first variable."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fam = spec.family
    if fam == "bilinear":
        out = y + 0.0 * x
    elif fam == "one_affine":
        a = npoly.polyval(y, spec.a_coeffs) if spec.a_coeffs else np.zeros_like(y)
        out = a + 0.0 * x
    elif fam == "neg_quadratic":
        out = -2.0 * spec.scale * (x - y)
    elif fam == "reflector":
        out = y / (1.0 - x * y)
    else:
        raise ValueError(f"cost family {fam!r} has no closed-form x-derivative")
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """Tabulated cost on a product grid: entries[i, j] = c(x_i, y_j)."""

    grid_i: Grid
    grid_j: Grid
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (self.grid_i.n, self.grid_j.n):
            raise ValueError(f"entries shape {e.shape} does not match grids "
                             f"({self.grid_i.n}, {self.grid_j.n})")
        if not np.isfinite(e).all():
            raise ValueError("cost matrix entries must all be finite")
        e = e.copy()
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    def negated(self) -> "CostMatrix":
        return CostMatrix(self.grid_i, self.grid_j, -self.entries)

    def transposed(self) -> "CostMatrix":
        return CostMatrix(self.grid_j, self.grid_i, self.entries.T)


def tabulate_cost(spec: CostSpec, grid_i: Grid, grid_j: Grid) -> CostMatrix:
    entries = evaluate_cost(spec, grid_i.points[:, None], grid_j.points[None, :])
    return CostMatrix(grid_i, grid_j, entries)


def tabulate_callable(fn: Callable, grid_i: Grid, grid_j: Grid) -> CostMatrix:
    """Tabulate an arbitrary c(x, y) callable (broadcasting) on a product grid."""
    entries = np.asarray(fn(grid_i.points[:, None], grid_j.points[None, :]), dtype=float)
    return CostMatrix(grid_i, grid_j, entries)


@dataclass(frozen=True)
class StructureVerdict:
    property: str
    holds: bool
    max_violation: float
    tol: float
    witness: Optional[tuple] = None  # (stencil start, stencil end, fixed index)


def default_structure_tol(matrix: CostMatrix) -> float:
    return 1e-9 * (1.0 + float(np.abs(matrix.entries).max()))


def check_structure(matrix: CostMatrix, property: str, tol: Optional[float] = None) -> StructureVerdict:
    """Test a structural property via second differences along one axis.

    Affineness: |second difference| <= tol.  Concavity: second difference
    <= tol.  Convexity: second difference >= -tol.
    """
    if property not in STRUCTURE_PROPERTIES:
        raise ValueError(f"unknown structural property {property!r}")
    if tol is None:
        tol = default_structure_tol(matrix)
    axis = 0 if property.startswith("one_") else 1
    if matrix.entries.shape[axis] < 3:
        raise ValueError(f"grid too small along axis {axis} for {property} (need >= 3 points)")
    d2 = np.diff(matrix.entries, 2, axis=axis)
    if property.endswith("affine"):
        viol = np.abs(d2)
    elif property.endswith("concave"):
        viol = d2
    else:  # convex
        viol = -d2
    max_violation = float(viol.max())
    holds = max_violation <= tol
    witness = None
    if not holds:
        i, j = map(int, np.argwhere(viol > tol)[0])
        witness = (i, i + 2, j) if axis == 0 else (j, j + 2, i)
    return StructureVerdict(property, holds, max_violation, float(tol), witness)


def segment_concavity_excess(matrix: CostMatrix) -> float:
    """Max second difference along rows, columns and both diagonals.

    Nonpositive (up to rounding) on costs concave along every grid-aligned
    and diagonal segment.  This does not certify full joint concavity.
    """
    e = matrix.entries
    worst = -np.inf
    if e.shape[0] >= 3:
        worst = max(worst, float(np.diff(e, 2, axis=0).max()))
    if e.shape[1] >= 3:
        worst = max(worst, float(np.diff(e, 2, axis=1).max()))
    if min(e.shape) >= 3:
        diag = e[:-2, :-2] - 2.0 * e[1:-1, 1:-1] + e[2:, 2:]
        anti = e[:-2, 2:] - 2.0 * e[1:-1, 1:-1] + e[2:, :-2]
        worst = max(worst, float(diag.max()), float(anti.max()))
    return worst


def read_cost_csv(path: str, rel_step_tol: float = 1e-9) -> CostMatrix:
    """CSV matrix: first row is the y grid, first column the x grid."""
    import csv as _csv

    rows = []
    with open(path, newline="") as fh:
        for row in _csv.reader(fh):
            if row and any(c.strip() for c in row):
                rows.append(row)
    if len(rows) < 3 or len(rows[0]) < 3:
        raise ValueError(f"{path}: cost matrix needs at least a 2x2 grid")
    y = np.array([float(c) for c in rows[0][1:]])
    x = np.array([float(r[0]) for r in rows[1:]])
    entries = np.array([[float(c) for c in r[1:]] for r in rows[1:]])

    def _grid(vals, name):
        steps = np.diff(vals)
        if (steps <= 0).any():
            raise ValueError(f"{path}: {name} grid must be strictly increasing")
        h = (vals[-1] - vals[0]) / (len(vals) - 1)
        if np.abs(steps - h).max() > rel_step_tol * max(abs(h), 1.0):
            raise ValueError(f"{path}: {name} grid is not uniform within tolerance")
        from .grids import make_uniform_grid
        return make_uniform_grid(vals[0], vals[-1], len(vals))

    return CostMatrix(_grid(x, "x"), _grid(y, "y"), entries)


def write_cost_csv(path: str, matrix: CostMatrix) -> None:
    import csv as _csv

    with open(path, "w", newline="") as fh:
        w = _csv.writer(fh)
        w.writerow([""] + [repr(float(v)) for v in matrix.grid_j.points])
        for xi, row in zip(matrix.grid_i.points, matrix.entries):
            w.writerow([repr(float(xi))] + [repr(float(v)) for v in row])
