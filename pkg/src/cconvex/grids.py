"""Uniform grids on bounded intervals, extended-real grid functions,
norms, quadrature and discrete probability measures.

Values are plain float64 arrays; ``+inf`` is the sentinel for a proper
function's "not finite here" value.  ``-inf`` and NaN are rejected at
construction, so they can only appear transiently inside reductions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Interval",
    "Grid",
    "GridFunction",
    "DiscreteMeasure",
    "make_uniform_grid",
    "sample_function",
    "sup_norm_diff",
    "quadrature",
    "barycenter",
    "read_grid_function_csv",
    "write_grid_function_csv",
]

_MEASURE_MASS_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """Bounded interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval bounds must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval: lo={self.lo} >= hi={self.hi}")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Grid:
    """Uniform grid x_i = lo + i*h, i = 0..n-1, with both endpoints exact."""

    interval: Interval
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"grid needs at least 2 points, got n={self.n}")
        pts = self.interval.lo + np.arange(self.n) * self.h
        pts[-1] = self.interval.hi  # endpoint exact regardless of rounding in lo + (n-1)*h
        pts.flags.writeable = False
        object.__setattr__(self, "_points", pts)

    @property
    def h(self) -> float:
        return (self.interval.hi - self.interval.lo) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return self._points

    def nearest_index(self, x: float) -> int:
        i = int(round((x - self.interval.lo) / self.h))
        return min(max(i, 0), self.n - 1)


def make_uniform_grid(lo: float, hi: float, n: int) -> Grid:
    return Grid(Interval(float(lo), float(hi)), int(n))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Extended-real values on a uniform grid; at least one value finite."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {vals.shape}")
        if np.isnan(vals).any():
            raise ValueError("NaN values are not allowed in a GridFunction")
        if np.isneginf(vals).any():
            raise ValueError("-inf values are not allowed in a GridFunction")
        if not np.isfinite(vals).any():
            raise ValueError("improper function: no finite value on the grid")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values).all())

    def max_slope(self) -> float:
        """Max absolute first-difference quotient over finite neighbours."""
        v = self.values
        d = np.abs(np.diff(v)) / self.grid.h
        d = d[np.isfinite(d)]
        return float(d.max()) if d.size else 0.0


def sample_function(evaluator: Callable[[float], float], grid: Grid) -> GridFunction:
    vals = np.array([float(evaluator(float(x))) for x in grid.points])
    if np.isnan(vals).any():
        i = int(np.argwhere(np.isnan(vals))[0][0])
        raise ValueError(f"evaluator returned NaN at x={grid.points[i]}")
    return GridFunction(grid, vals)


def _require_same_grid(f: GridFunction, g: GridFunction):
    if f.grid != g.grid:
        raise ValueError("grid mismatch between grid functions")


def sup_norm_diff(f: GridFunction, g: GridFunction) -> float:
    _require_same_grid(f, g)
    if not (f.is_finite and g.is_finite):
        raise ValueError("sup_norm_diff requires everywhere-finite functions")
    return float(np.abs(f.values - g.values).max())


def quadrature(f: GridFunction, rule: str = "trapezoid") -> float:
    """Composite quadrature over the uniform grid, left-to-right summation.

    ``midpoint`` uses cells of width 2h with the odd-index points as cell
    midpoints, so it requires an odd number of grid points.
    """
    if not f.is_finite:
        raise ValueError("quadrature requires everywhere-finite values")
    v = f.values
    h = f.grid.h
    if rule == "trapezoid":
        acc = 0.5 * v[0]
        for x in v[1:-1]:
            acc += x
        acc += 0.5 * v[-1]
        return float(acc * h)
    if rule == "midpoint":
        if f.grid.n % 2 == 0:
            raise ValueError("midpoint rule needs an odd number of grid points")
        acc = 0.0
        for x in v[1::2]:
            acc += x
        return float(acc * 2.0 * h)
    raise ValueError(f"unknown quadrature rule: {rule!r}")


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Discrete probability measure: atoms with positive weights summing to 1."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if pos.ndim != 1 or pos.shape != w.shape or pos.size < 1:
            raise ValueError("positions and weights must be equal-length 1-D arrays, n >= 1")
        if not np.isfinite(pos).all() or not np.isfinite(w).all():
            raise ValueError("atoms must be finite")
        if (w <= 0).any():
            raise ValueError("weights must be strictly positive")
        total = 0.0
        for p in w:
            total += p
        if abs(total - 1.0) > _MEASURE_MASS_TOL:
            raise ValueError(f"weights must sum to 1 within {_MEASURE_MASS_TOL}, got {total}")
        pos, w = pos.copy(), w.copy()
        pos.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_atoms(cls, atoms: Sequence[tuple[float, float]]) -> "DiscreteMeasure":
        xs, ps = zip(*atoms)
        return cls(np.array(xs, dtype=float), np.array(ps, dtype=float))

    @property
    def n_atoms(self) -> int:
        return int(self.positions.size)


def barycenter(mu: DiscreteMeasure) -> float:
    acc = 0.0
    for x, p in zip(mu.positions, mu.weights):
        acc += p * x
    return float(acc)


def read_grid_function_csv(path: str, rel_step_tol: float = 1e-9) -> GridFunction:
    """Two-column CSV (x, f(x)); header optional; ``inf`` means +inf.

    The x column must be strictly increasing and uniform within the given
    relative step tolerance.
    """
    xs: list[float] = []
    vs: list[float] = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected two columns")
            sx, sv = row[0].strip(), row[1].strip()
            try:
                x = float(sx)
            except ValueError:
                if lineno == 1:  # header row
                    continue
                raise ValueError(f"{path}:{lineno}: bad x value {sx!r}") from None
            if sv.lower() in ("inf", "+inf", "infinity"):
                v = math.inf
            else:
                try:
                    v = float(sv)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad f value {sv!r}") from None
            xs.append(x)
            vs.append(v)
    if len(xs) < 2:
        raise ValueError(f"{path}: need at least two data rows")
    x = np.array(xs)
    steps = np.diff(x)
    if (steps <= 0).any():
        raise ValueError(f"{path}: x column must be strictly increasing")
    h = (x[-1] - x[0]) / (len(x) - 1)
    if np.abs(steps - h).max() > rel_step_tol * max(abs(h), 1.0):
        raise ValueError(f"{path}: x column is not uniform within tolerance")
    grid = make_uniform_grid(x[0], x[-1], len(x))
    return GridFunction(grid, np.array(vs))


def write_grid_function_csv(path: str, f: GridFunction, header=("x", "f")) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if header:
            w.writerow(header)
        for x, v in zip(f.grid.points, f.values):
            w.writerow([repr(float(x)), "inf" if math.isinf(v) else repr(float(v))])
