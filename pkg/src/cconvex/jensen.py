"""Jensen-type gap bounds for c-convex functions: discrete, midpoint,
integral and weighted forms, plus the 1-affine reduction to classical
Jensen.

Every bound compares

    lhs = (f-side gap)   against   rhs = (cost-side gap)

for a subgradient witness y in the c-subdifferential at the barycenter.
The witness hypothesis is verified rather than trusted; when it fails the
report carries ``hypothesis_verified = False`` instead of raising, so the
failure mode of the bound stays observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .costs import CostSpec, check_structure, evaluate_cost, tabulate_cost
from .grids import DiscreteMeasure, Grid, GridFunction, barycenter, quadrature
from .verdicts import Verdict

__all__ = [
    "JensenReport",
    "NoAdmissibleWitnessError",
    "discrete_jensen_gap",
    "midpoint_bound",
    "support_concavity_check",
    "integral_jensen_bound",
    "weighted_integral_bound",
    "classical_reduction_check",
]


class NoAdmissibleWitnessError(ValueError):
    """The c-subdifferential at the required anchor point is empty."""


@dataclass(frozen=True)
class JensenReport:
    lhs: float
    rhs: float
    y_witness: float
    holds: bool
    slack: float
    hypothesis_verified: bool
    tol: float
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "y_witness": self.y_witness,
            "holds": bool(self.holds),
            "slack": self.slack,
            "hypothesis_verified": bool(self.hypothesis_verified),
            "tol": self.tol,
            "notes": self.notes,
        }


def _f_value(f: GridFunction, x: float, f_eval: Optional[Callable]) -> tuple[float, bool]:
    """f at a (possibly off-grid) point; returns (value, used_interpolation)."""
    if f_eval is not None:
        return float(f_eval(x)), False
    if not f.is_finite:
        raise ValueError("interpolated evaluation needs an everywhere-finite f")
    return float(np.interp(x, f.grid.points, f.values)), True


def _witness_slack(f: GridFunction, cost: CostSpec, anchor: float, fb: float, y: float) -> float:
    """min_x { f(x) - f(anchor) - c(x, y) + c(anchor, y) } over the grid."""
    c_col = evaluate_cost(cost, f.grid.points, y)
    gaps = (f.values - fb) - (c_col - evaluate_cost(cost, anchor, y))
    return float(np.min(gaps))


def _pick_witness(f: GridFunction, cost: CostSpec, anchor: float, fb: float,
                  grid_j: Grid) -> tuple[float, float]:
    """Best witness over the J grid and its membership slack."""
    cols = evaluate_cost(cost, f.grid.points[:, None], grid_j.points[None, :])
    anchor_row = evaluate_cost(cost, anchor, grid_j.points)
    gaps = (f.values[:, None] - fb) - (cols - anchor_row[None, :])
    slacks = gaps.min(axis=0)
    j = int(np.argmax(slacks))
    return float(grid_j.points[j]), float(slacks[j])


def _resolve_witness(f, cost, anchor, fb, y, grid_j, eff_tol):
    if y is None:
        if grid_j is None:
            raise ValueError("no witness y supplied and no J grid to search")
        y, slack = _pick_witness(f, cost, anchor, fb, grid_j)
        if slack < -eff_tol:
            raise NoAdmissibleWitnessError(
                f"no admissible witness: best membership slack {slack} at the anchor "
                f"{anchor} is below -{eff_tol}")
        return float(y), True
    slack = _witness_slack(f, cost, anchor, fb, float(y))
    return float(y), slack >= -eff_tol


def _interp_tol(f: GridFunction, tol: float, used_interp: bool) -> float:
    # linear interpolation at off-grid points costs up to 2 * Lhat * h
    if not used_interp:
        return tol
    return tol + 2.0 * f.max_slope() * f.grid.h


def discrete_jensen_gap(f: GridFunction, cost: CostSpec, mu: DiscreteMeasure,
                        y: Optional[float] = None, tol: float = 1e-9,
                        f_eval: Optional[Callable] = None,
                        grid_j: Optional[Grid] = None) -> JensenReport:
    """Gap bound sum p_i f(x_i) - f(b) >= sum p_i c(x_i, y) - c(b, y)."""
    iv = f.grid.interval
    for x in mu.positions:
        if not iv.contains(float(x)):
            raise ValueError(f"measure atom {x} lies outside the interval [{iv.lo}, {iv.hi}]")
    b = barycenter(mu)
    fb, used_interp = _f_value(f, b, f_eval)
    eff_tol = _interp_tol(f, tol, used_interp)
    notes = []
    if used_interp:
        notes.append("f interpolated at barycenter")
    if b in (iv.lo, iv.hi):
        notes.append("barycenter at an endpoint")
    y, hyp_ok = _resolve_witness(f, cost, b, fb, y, grid_j, eff_tol)
    if not hyp_ok:
        notes.append("hypothesis-unverified: y is not a subdifferential member at tol")

    atom_vals = [_f_value(f, float(x), f_eval)[0] for x in mu.positions]
    lhs = 0.0
    for p, fx in zip(mu.weights, atom_vals):
        lhs += p * fx
    lhs -= fb
    rhs = 0.0
    for p, x in zip(mu.weights, mu.positions):
        rhs += p * evaluate_cost(cost, float(x), y)
    rhs -= evaluate_cost(cost, b, y)
    slack = lhs - rhs
    return JensenReport(lhs=float(lhs), rhs=float(rhs), y_witness=y,
                        holds=slack >= -eff_tol, slack=float(slack),
                        hypothesis_verified=hyp_ok, tol=eff_tol, notes="; ".join(notes))


def midpoint_bound(f: GridFunction, cost: CostSpec, a: float, b: float,
                   y: Optional[float] = None, tol: float = 1e-9,
                   f_eval: Optional[Callable] = None,
                   grid_j: Optional[Grid] = None) -> JensenReport:
    """Two-atom equal-weight specialization of the discrete gap bound."""
    mu = DiscreteMeasure(np.array([a, b], dtype=float), np.array([0.5, 0.5]))
    return discrete_jensen_gap(f, cost, mu, y=y, tol=tol, f_eval=f_eval, grid_j=grid_j)


def support_concavity_check(f: GridFunction, cost: CostSpec, a: float, b: float,
                            y: float, tol: float = 1e-9,
                            f_eval: Optional[Callable] = None) -> Verdict:
    """Midpoint concavity of g(x) = c(x, y) - f(x): g((a+b)/2) >= (g(a)+g(b))/2."""
    mid = (a + b) / 2.0

    def g(x: float) -> float:
        fx, interp = _f_value(f, x, f_eval)
        return float(evaluate_cost(cost, x, y)) - fx, interp

    gm, im = g(mid)
    ga, ia = g(a)
    gb, ib = g(b)
    eff_tol = _interp_tol(f, tol, im or ia or ib)
    excess = (ga + gb) / 2.0 - gm - eff_tol
    return Verdict("support_concavity", excess <= 0.0, float(excess),
                   witness=None if excess <= 0 else (a, b, y),
                   notes=f"tol={eff_tol}")


def _quadrature_tol(f: GridFunction, c_col: np.ndarray, tol: float) -> float:
    # composite-rule error allowance: h^2 (b-a) (M2f + M2c) / 6
    h = f.grid.h
    m2f = float(np.abs(np.diff(f.values, 2)).max(initial=0.0)) / h**2
    m2c = float(np.abs(np.diff(c_col, 2)).max(initial=0.0)) / h**2
    return tol + h**2 * f.grid.interval.length * (m2f + m2c) / 6.0


def integral_jensen_bound(f: GridFunction, cost: CostSpec, xi: Optional[float] = None,
                          y: Optional[float] = None, rule: str = "trapezoid",
                          tol: float = 1e-9, grid_j: Optional[Grid] = None) -> JensenReport:
    """Integral gap bound on [a, b]:

        int f - f(xi)(b - a)  >=  int [c(x, y) - c(xi, y)] dx.

    xi defaults to the interval midpoint and is snapped to the nearest
    grid point (with a note when the snap is nontrivial).
    """
    if not f.is_finite:
        raise ValueError("integral form requires an everywhere-finite f")
    iv = f.grid.interval
    if xi is None:
        xi = (iv.lo + iv.hi) / 2.0
    idx = f.grid.nearest_index(float(xi))
    snapped = float(f.grid.points[idx])
    notes = []
    if abs(snapped - xi) > 1e-12 * (1.0 + abs(xi)):
        notes.append(f"xi snapped from {xi} to grid point {snapped}")
    xi = snapped
    f_xi = float(f.values[idx])
    y, hyp_ok = _resolve_witness(f, cost, xi, f_xi, y, grid_j, tol)
    if not hyp_ok:
        notes.append("hypothesis-unverified: y is not a subdifferential member at tol")

    c_col = np.asarray(evaluate_cost(cost, f.grid.points, y), dtype=float)
    lhs = quadrature(f, rule) - f_xi * iv.length
    rhs = quadrature(GridFunction(f.grid, c_col - evaluate_cost(cost, xi, y)), rule)
    eff_tol = _quadrature_tol(f, c_col, tol)
    slack = lhs - rhs
    return JensenReport(lhs=float(lhs), rhs=float(rhs), y_witness=y,
                        holds=slack >= -eff_tol, slack=float(slack),
                        hypothesis_verified=hyp_ok, tol=eff_tol, notes="; ".join(notes))


def weighted_integral_bound(f: GridFunction, cost: CostSpec, mu: DiscreteMeasure,
                            y: Optional[float] = None, tol: float = 1e-9,
                            f_eval: Optional[Callable] = None,
                            grid_j: Optional[Grid] = None) -> JensenReport:
    """Weighted form for a discrete measure; the barycenter must be interior."""
    iv = f.grid.interval
    b = barycenter(mu)
    if b <= iv.lo + 1e-12 * (1 + abs(iv.lo)) or b >= iv.hi - 1e-12 * (1 + abs(iv.hi)):
        raise ValueError(f"weighted form requires an interior barycenter, got {b}")
    return discrete_jensen_gap(f, cost, mu, y=y, tol=tol, f_eval=f_eval, grid_j=grid_j)


def classical_reduction_check(f: GridFunction, cost: CostSpec, grid_j: Grid,
                              tol: float = 1e-9) -> Verdict:
    """For 1-affine costs the cost-side gap vanishes and the bound reduces
    to the classical midpoint-vs-mean inequality f(mid) <= mean(f)."""
    if not f.is_finite:
        raise ValueError("classical reduction needs an everywhere-finite f")
    matrix = tabulate_cost(cost, f.grid, grid_j)
    sv = check_structure(matrix, "one_affine")
    if not sv.holds:
        raise ValueError(f"cost is not 1-affine (max second difference {sv.max_violation})")
    iv = f.grid.interval
    mid = (iv.lo + iv.hi) / 2.0
    idx = f.grid.nearest_index(mid)
    # cost-side gap must vanish within quadrature tolerance for every y column
    worst = 0.0
    for j in range(grid_j.n):
        col = GridFunction(f.grid, matrix.entries[:, j])
        gap = abs(quadrature(col) - matrix.entries[idx, j] * iv.length)
        worst = max(worst, gap)
    quad_tol = _quadrature_tol(f, matrix.entries[:, 0], tol)
    mean_f = quadrature(f) / iv.length
    classical_excess = float(f.values[idx]) - mean_f
    excess = max(worst - quad_tol, classical_excess - quad_tol)
    return Verdict("classical_reduction", excess <= 0.0, float(excess),
                   witness=None if excess <= 0 else (idx,),
                   notes=f"quad_tol={quad_tol}")
