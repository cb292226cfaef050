"""Machine-checkable verdicts for the structural propositions relating
c-subdifferentials, convexity and cost structure, plus the seeded random
instance generator feeding the verification suite.

Conventions shared by all checks:

* ``max_violation`` is the excess beyond the check's documented
  allowance, so ``holds <=> max_violation <= 0``.
* Hypothesis checks are separated from conclusion checks; when a
  hypothesis fails the verdict holds with a ``hypothesis-failed`` note
  and the conclusion is not judged.
* Vacuous sweeps (no qualifying pairs) hold with a ``vacuous`` note.
* Pair sweeps are capped (seeded sampling); ``exhaustive=True`` removes
  the cap.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .costs import (CostMatrix, CostSpec, check_structure, cost_dx,
                    segment_concavity_excess, tabulate_cost)
from .grids import Grid, GridFunction, make_uniform_grid
from .subdiff import LocalWindow, local_c_subdifferential, local_double_conjugate, membership_slack
from .transform import double_c_transform, is_c_convex
from .verdicts import Verdict

__all__ = [
    "InstanceConfig",
    "Verdict",
    "generate_instance",
    "check_mixture",
    "check_order_propagation",
    "check_subdiff_convexity",
    "check_set_valued_convexity",
    "check_intersection_inclusion",
    "check_domain_interval",
    "check_grad_inclusion",
    "check_cost_self_subdiff",
    "check_local_support_iff",
    "run_suite",
    "DEFAULT_LAMBDAS",
]

DEFAULT_LAMBDAS = (0.0, 0.25, 0.5, 0.75, 1.0)
F_FAMILIES = ("random_piecewise_linear", "random_smooth_fourier", "cconvexified_random")


@dataclass(frozen=True)
class InstanceConfig:
    """Deterministic recipe for one (f, cost) instance."""

    seed: int
    n: int = 129
    m: int = 129
    interval_i: tuple[float, float] = (-1.0, 1.0)
    interval_j: tuple[float, float] = (-1.0, 1.0)
    cost_family: str = "bilinear"
    cost_params: tuple = ()
    f_family: str = "cconvexified_random"
    amplitude: float = 1.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["interval_i"] = list(d["interval_i"])
        d["interval_j"] = list(d["interval_j"])
        d["cost_params"] = list(d["cost_params"])
        return d


def _cost_spec(cfg: InstanceConfig) -> CostSpec:
    fam = cfg.cost_family
    if fam == "neg_quadratic":
        return CostSpec("neg_quadratic", scale=cfg.cost_params[0] if cfg.cost_params else 1.0)
    if fam == "one_affine":
        a, b = cfg.cost_params
        return CostSpec("one_affine", a_coeffs=tuple(a), b_coeffs=tuple(b))
    return CostSpec(fam)


def _raw_function(cfg: InstanceConfig, grid: Grid, rng: np.random.Generator,
                  family: str) -> np.ndarray:
    lo, hi = grid.interval.lo, grid.interval.hi
    amp = cfg.amplitude
    if family == "random_piecewise_linear":
        k = int(rng.integers(3, 8))
        knots = np.sort(rng.uniform(lo, hi, k))
        knots[0], knots[-1] = lo, hi
        vals = rng.uniform(-amp, amp, k)
        return np.interp(grid.points, knots, vals)
    if family == "random_smooth_fourier":
        t = (grid.points - lo) / (hi - lo)
        out = np.zeros(grid.n)
        for k in range(1, 6):
            a, b = rng.normal(size=2)
            out += (amp / k**2) * (a * np.cos(np.pi * k * t) + b * np.sin(np.pi * k * t))
        return out
    raise ValueError(f"unknown f family {family!r}")


def generate_instance(cfg: InstanceConfig) -> tuple[GridFunction, CostMatrix]:
    """Deterministic seeded instance; same config => bit-identical output."""
    grid_i = make_uniform_grid(*cfg.interval_i, cfg.n)
    grid_j = make_uniform_grid(*cfg.interval_j, cfg.m)
    cost = tabulate_cost(_cost_spec(cfg), grid_i, grid_j)
    rng = np.random.default_rng(cfg.seed)
    if cfg.f_family == "cconvexified_random":
        raw = GridFunction(grid_i, _raw_function(cfg, grid_i, rng, "random_smooth_fourier"))
        f = double_c_transform(raw, cost).values
    elif cfg.f_family in F_FAMILIES:
        f = GridFunction(grid_i, _raw_function(cfg, grid_i, rng, cfg.f_family))
    else:
        raise ValueError(f"unknown f family {cfg.f_family!r}")
    return f, cost


# ---------------------------------------------------------------------------
# helpers

def _float_margin(*arrays: np.ndarray) -> float:
    scale = max(float(np.abs(a[np.isfinite(a)]).max(initial=0.0)) for a in arrays)
    return 1e-12 * (1.0 + scale)


def _max_slope(values: np.ndarray, h: float) -> float:
    d = np.abs(np.diff(values)) / h
    d = d[np.isfinite(d)]
    return float(d.max()) if d.size else 0.0


def _sample_pairs(rng: np.random.Generator, pool: np.ndarray, cap: int,
                  exhaustive: bool) -> tuple[np.ndarray, np.ndarray]:
    k = pool.size
    if k < 2:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    if exhaustive or k * (k - 1) <= cap:
        a, b = np.meshgrid(pool, pool, indexing="ij")
        mask = a.ravel() != b.ravel()
        return a.ravel()[mask], b.ravel()[mask]
    i1 = pool[rng.integers(0, k, cap)]
    i2 = pool[rng.integers(0, k, cap)]
    mask = i1 != i2
    return i1[mask], i2[mask]


def _hypothesis_verdict(check_id: str, reason: str) -> Verdict:
    return Verdict(check_id, True, 0.0, notes=f"hypothesis-failed: {reason}; conclusion not judged")


def _vacuous(check_id: str, notes: str = "vacuous: no qualifying cases") -> Verdict:
    return Verdict(check_id, True, 0.0, notes=notes)


def _is_convex_values(values: np.ndarray, h: float, tol: float) -> bool:
    return bool((np.diff(values, 2) >= -tol * (1.0 + np.abs(values).max())).all())


# ---------------------------------------------------------------------------
# proposition checks

def check_mixture(f: GridFunction, g: GridFunction, cost: CostMatrix,
                  lambdas: Sequence[float] = DEFAULT_LAMBDAS,
                  tol: float = 1e-9) -> Verdict:
    """Members of both subdifferentials stay members of any convex mixture:
    for y in the intersection at x, y belongs to the set of (1-l)f + l g."""
    check_id = "mixture"
    sf = membership_slack(f, cost)
    sg = membership_slack(g, cost)
    inter = (sf >= -tol) & (sg >= -tol)
    if not inter.any():
        return _vacuous(check_id)
    margin = _float_margin(cost.entries, f.values, g.values)
    worst = -np.inf
    witness = None
    for lam in lambdas:
        mix = GridFunction(f.grid, (1.0 - lam) * f.values + lam * g.values)
        sm = membership_slack(mix, cost)
        # exact arithmetic gives slack_mix >= (1-l) slack_f + l slack_g >= -tol
        excess = np.where(inter, -sm, -np.inf) - (tol + margin)
        val = float(excess.max())
        if val > worst:
            worst = val
            if val > 0:
                i, j = map(int, np.unravel_index(np.argmax(excess), excess.shape))
                witness = (i, j, float(lam))
    return Verdict(check_id, worst <= 0.0, worst, witness,
                   notes=f"lambdas={list(lambdas)}; tol={tol}")


def check_order_propagation(f: GridFunction, g: GridFunction, cost: CostMatrix,
                            tol: float = 1e-9) -> Verdict:
    """If f < g at u and some y lies in both the subdifferential of g at u
    and of f at v, then f < g at v.

    With tolerance-qualified memberships the exact argument degrades by
    2*tol, so u qualifies only when g(u) - f(u) > 4*tol; the conclusion
    must then hold outright.
    """
    check_id = "order_propagation"
    mg = membership_slack(g, cost) >= -tol
    mf = membership_slack(f, cost) >= -tol
    gap = g.values - f.values
    u_mask = gap > 4.0 * tol
    if not u_mask.any():
        return _vacuous(check_id)
    # pairs (u, v) whose sets intersect: counts[u, v] > 0
    counts = mg.astype(np.int64) @ mf.astype(np.int64).T
    qualifying = u_mask[:, None] & (counts > 0)
    if not qualifying.any():
        return _vacuous(check_id)
    viol = np.where(qualifying, f.values[None, :] - g.values[None, :], -np.inf)
    worst = float(viol.max())
    witness = None
    if worst > 0:
        u, v = map(int, np.unravel_index(np.argmax(viol), viol.shape))
        witness = (u, v)
    return Verdict(check_id, worst <= 0.0, worst, witness, notes=f"u-gap=4*tol; tol={tol}")


def check_subdiff_convexity(f: GridFunction, cost: CostMatrix, tol: float = 1e-9,
                            pair_cap: int = 10000, seed: int = 0,
                            exhaustive: bool = False) -> Verdict:
    """Under a 2-affine cost every nonempty subdifferential is an interval
    of the y grid, and distinct interior points share at most one
    subgradient (intersection diameter <= y grid step + tol)."""
    check_id = "subdiff_convexity"
    sv = check_structure(cost, "two_affine")
    if not sv.holds:
        return _hypothesis_verdict(check_id, "cost not two_affine")
    ok, dev = is_c_convex(f, cost)
    if not ok:
        return _hypothesis_verdict(check_id, f"f not c-convex (deviation {dev})")
    member = membership_slack(f, cost) >= -tol
    worst = -np.inf
    witness = None
    for i in range(f.grid.n):
        idx = np.flatnonzero(member[i])
        if idx.size == 0:
            continue
        gaps = float(idx[-1] - idx[0] + 1 - idx.size)  # zero iff contiguous
        if gaps > worst:
            worst = gaps
            witness = (i, int(idx[0]), int(idx[-1])) if gaps > 0 else witness
    if worst == -np.inf:
        return _vacuous(check_id, "vacuous: every subdifferential empty")
    rng = np.random.default_rng(seed)
    interior = np.arange(1, f.grid.n - 1)
    i1, i2 = _sample_pairs(rng, interior, pair_cap, exhaustive)
    hj = cost.grid_j.h
    yv = cost.grid_j.points
    for a, b in zip(i1, i2):
        both = member[a] & member[b]
        if not both.any():
            continue
        ys = yv[both]
        excess = (ys[-1] - ys[0]) - (hj + tol)
        if excess > worst:
            worst = float(excess)
            if excess > 0:
                witness = (int(a), int(b))
    return Verdict(check_id, worst <= 0.0, float(worst), witness,
                   notes=f"pairs={i1.size}; tol={tol}")


def _snap_allowance(f: GridFunction, cost: CostMatrix, tol: float,
                    dx: float, dy: float) -> float:
    lf = _max_slope(f.values, f.grid.h)
    lcx = float(np.abs(np.diff(cost.entries, axis=0)).max()) / f.grid.h
    lcy = float(np.abs(np.diff(cost.entries, axis=1)).max()) / cost.grid_j.h
    return tol + 2.0 * (lf + lcx) * dx + 2.0 * lcy * dy


def check_set_valued_convexity(f: GridFunction, cost: CostMatrix,
                               lambdas: Sequence[float] = DEFAULT_LAMBDAS,
                               tol: float = 1e-9, pair_cap: int = 10000,
                               seed: int = 0, exhaustive: bool = False) -> Verdict:
    """For a concave 2-affine cost and convex, c-convex f, mixtures of
    subgradients at two points are subgradients at the mixed point.

    Cost concavity is segment-tested (rows, columns, diagonals); the
    verdict notes record that interpretation.  Mixture points and mixed
    subgradients are snapped to the grids with a slope-scaled tolerance
    inflation.
    """
    check_id = "set_valued_convexity"
    sv = check_structure(cost, "two_affine")
    if not sv.holds:
        return _hypothesis_verdict(check_id, "cost not two_affine")
    seg = segment_concavity_excess(cost)
    if seg > 1e-9 * (1.0 + float(np.abs(cost.entries).max())):
        return _hypothesis_verdict(check_id, f"cost not segment-concave (excess {seg})")
    if not _is_convex_values(f.values, f.grid.h, tol):
        return _hypothesis_verdict(check_id, "f not convex")
    ok, dev = is_c_convex(f, cost)
    if not ok:
        return _hypothesis_verdict(check_id, f"f not c-convex (deviation {dev})")

    slack = membership_slack(f, cost)
    member = slack >= -tol
    dom = np.flatnonzero(member.any(axis=1))
    if dom.size < 2:
        return _vacuous(check_id, "vacuous: effective domain has fewer than two points")
    rng = np.random.default_rng(seed)
    i1s, i2s = _sample_pairs(rng, dom, pair_cap, exhaustive)
    xv, yv = f.grid.points, cost.grid_j.points
    worst = -np.inf
    witness = None
    for x1, x2 in zip(i1s, i2s):
        a = int(rng.choice(np.flatnonzero(member[x1])))
        b = int(rng.choice(np.flatnonzero(member[x2])))
        for lam in lambdas:
            xm = (1.0 - lam) * xv[x1] + lam * xv[x2]
            ym = (1.0 - lam) * yv[a] + lam * yv[b]
            im = f.grid.nearest_index(xm)
            jm = cost.grid_j.nearest_index(ym)
            allow = _snap_allowance(f, cost, tol, abs(xv[im] - xm), abs(yv[jm] - ym))
            excess = -slack[im, jm] - allow
            if excess > worst:
                worst = float(excess)
                if excess > 0:
                    witness = (int(x1), int(x2), float(lam))
    return Verdict(check_id, worst <= 0.0, float(worst), witness,
                   notes=f"pairs={i1s.size}; concavity=segment-tested; tol={tol}")


def check_intersection_inclusion(f: GridFunction, cost: CostMatrix,
                                 lambdas: Sequence[float] = DEFAULT_LAMBDAS,
                                 tol: float = 1e-9, pair_cap: int = 10000,
                                 seed: int = 0, exhaustive: bool = False) -> Verdict:
    """For a 1-concave cost and convex, c-convex f, a common subgradient
    of two points is a subgradient at every convex combination."""
    check_id = "intersection_inclusion"
    sv = check_structure(cost, "one_concave")
    if not sv.holds:
        return _hypothesis_verdict(check_id, "cost not one_concave")
    if not _is_convex_values(f.values, f.grid.h, tol):
        return _hypothesis_verdict(check_id, "f not convex")
    ok, dev = is_c_convex(f, cost)
    if not ok:
        return _hypothesis_verdict(check_id, f"f not c-convex (deviation {dev})")

    slack = membership_slack(f, cost)
    member = slack >= -tol
    dom = np.flatnonzero(member.any(axis=1))
    interior = dom[(dom > 0) & (dom < f.grid.n - 1)]
    if interior.size < 2:
        return _vacuous(check_id)
    rng = np.random.default_rng(seed)
    i1s, i2s = _sample_pairs(rng, interior, pair_cap, exhaustive)
    xv = f.grid.points
    worst = -np.inf
    witness = None
    any_intersection = False
    for x1, x2 in zip(i1s, i2s):
        inter = np.flatnonzero(member[x1] & member[x2])
        if inter.size == 0:
            continue
        any_intersection = True
        for lam in lambdas:
            xm = (1.0 - lam) * xv[x1] + lam * xv[x2]
            im = f.grid.nearest_index(xm)
            allow = _snap_allowance(f, cost, tol, abs(xv[im] - xm), 0.0)
            excess = float((-slack[im, inter]).max() - allow)
            if excess > worst:
                worst = excess
                if excess > 0:
                    witness = (int(x1), int(x2), float(lam))
    if not any_intersection:
        return _vacuous(check_id, "vacuous: no intersecting pairs found")
    return Verdict(check_id, worst <= 0.0, float(worst), witness,
                   notes=f"pairs={i1s.size}; tol={tol}")


def check_domain_interval(f: GridFunction, cost: CostMatrix, tol: float = 1e-9,
                          pair_cap: int = 10000, seed: int = 0,
                          exhaustive: bool = False) -> Verdict:
    """For a 1-concave cost and convex f, two points with intersecting
    subdifferentials bracket an interval contained in the effective
    domain.  Grid points between them are exact convex combinations, so
    the allowance is 2*tol plus rounding."""
    check_id = "domain_interval"
    sv = check_structure(cost, "one_concave")
    if not sv.holds:
        return _hypothesis_verdict(check_id, "cost not one_concave")
    if not _is_convex_values(f.values, f.grid.h, tol):
        return _hypothesis_verdict(check_id, "f not convex")
    slack = membership_slack(f, cost)
    member = slack >= -tol
    allow = 2.0 * tol + _float_margin(cost.entries, f.values)
    dom_relaxed = (slack >= -allow).any(axis=1)
    idx = np.flatnonzero(member.any(axis=1))
    if idx.size < 2:
        return _vacuous(check_id)
    rng = np.random.default_rng(seed)
    i1s, i2s = _sample_pairs(rng, idx, pair_cap, exhaustive)
    worst = -np.inf
    witness = None
    any_intersection = False
    for x1, x2 in zip(i1s, i2s):
        if x1 > x2:
            x1, x2 = x2, x1
        if not (member[x1] & member[x2]).any():
            continue
        any_intersection = True
        missing = np.flatnonzero(~dom_relaxed[x1:x2 + 1])
        excess = float(missing.size)
        if excess > worst:
            worst = excess
            if excess > 0:
                witness = (int(x1), int(x2), int(x1 + missing[0]))
    if not any_intersection:
        return _vacuous(check_id, "vacuous: no intersecting pairs found")
    return Verdict(check_id, worst <= 0.0, float(worst), witness,
                   notes=f"pairs={i1s.size}; allowance=2*tol; tol={tol}")


def check_grad_inclusion(f: GridFunction, cost_spec: CostSpec, cost: CostMatrix,
                         tol: float = 1e-9, safety: float = 4.0) -> Verdict:
    """Members of the c-subdifferential satisfy dc/dx(x, y) ~ f'(x): the
    mismatch is bounded by C*h with

        C = (M2f + M2c)/2 + h*M3f/6 + tol/h^2,

    M2/M3 the max second/third difference quotients (f' estimated by
    central differences), scaled by a documented safety factor.
    """
    check_id = "grad_inclusion"
    h = f.grid.h
    member = membership_slack(f, cost) >= -tol
    interior = np.arange(1, f.grid.n - 1)
    pairs = np.argwhere(member[interior])
    if pairs.size == 0:
        return _vacuous(check_id, "vacuous: no interior members")
    m2f = float(np.abs(np.diff(f.values, 2)).max()) / h**2
    m3f = float(np.abs(np.diff(f.values, 3)).max(initial=0.0)) / h**3
    m2c = float(np.abs(np.diff(cost.entries, 2, axis=0)).max()) / h**2
    threshold = safety * ((0.5 * (m2f + m2c) + h * m3f / 6.0) * h + tol / h)
    fprime = (f.values[2:] - f.values[:-2]) / (2.0 * h)
    xs = f.grid.points[interior[pairs[:, 0]]]
    ys = cost.grid_j.points[pairs[:, 1]]
    dc = np.asarray(cost_dx(cost_spec, xs, ys), dtype=float)
    mismatch = np.abs(dc - fprime[pairs[:, 0]])
    worst = float(mismatch.max() - threshold)
    witness = None
    if worst > 0:
        k = int(np.argmax(mismatch))
        witness = (int(interior[pairs[k, 0]]), int(pairs[k, 1]))
    return Verdict(check_id, worst <= 0.0, worst, witness,
                   notes=f"threshold={threshold}; members={pairs.shape[0]}; tol={tol}")


def check_cost_self_subdiff(cost: CostMatrix, tol: float = 0.0) -> Verdict:
    """Every cost slice supports itself: with f = c(., y_j), y_j belongs to
    the subdifferential at every x with slack exactly zero."""
    check_id = "cost_self_subdiff"
    worst = -np.inf
    witness = None
    for j in range(cost.grid_j.n):
        f = GridFunction(cost.grid_i, cost.entries[:, j])
        slack_col = membership_slack(f, cost)[:, j]
        excess = float(np.abs(slack_col).max() - tol)
        if excess > worst:
            worst = excess
            if excess > 0:
                witness = (int(np.argmax(np.abs(slack_col))), j)
    return Verdict(check_id, worst <= 0.0, float(worst), witness,
                   notes=f"tol={tol} (identity; slack must vanish exactly)")


def check_local_support_iff(f: GridFunction, cost: CostMatrix, alpha_index: int,
                            epsilon: float, tol: float = 1e-9) -> Verdict:
    """A local support curve exists at alpha iff f(alpha) equals the local
    double conjugate there; both directions are asserted."""
    check_id = "local_support_iff"
    window = LocalWindow(int(alpha_index), float(epsilon))
    s = local_c_subdifferential(f, cost, window, tol)
    lb = local_double_conjugate(f, cost, window, tol)
    f0 = float(f.values[alpha_index])
    eq_tol = tol + _float_margin(cost.entries, f.values)
    if not s.is_empty:
        # support exists => equality
        excess = abs(f0 - lb.value) - eq_tol
        note = "support exists; equality checked"
    else:
        # no support => strict drop below f(alpha)
        excess = lb.value - (f0 - eq_tol)
        note = "no support; strict drop checked (exhaustive-y convention)"
    return Verdict(check_id, excess <= 0.0, float(excess),
                   witness=None if excess <= 0 else (int(alpha_index),),
                   notes=f"{note}; epsilon={epsilon}; tol={tol}")


# ---------------------------------------------------------------------------
# suite orchestration

def _abs_value_function(grid: Grid, sign: float = 1.0) -> GridFunction:
    return GridFunction(grid, sign * np.abs(grid.points))


def run_suite(seed: int = 0, tol: float = 1e-9, pair_cap: int = 10000,
              exhaustive: bool = False, falsify: bool = False) -> list[Verdict]:
    """Deterministic battery over seeded instances exercising every check.

    ``falsify`` replaces the c-convexified inputs of the hypothesis-gated
    checks with raw random functions, demonstrating that hypothesis
    failures are reported as such and never as conclusion failures.
    """
    verdicts: list[Verdict] = []
    n = m = 101
    gated_family = "random_smooth_fourier" if falsify else "cconvexified_random"

    # bilinear instances
    cfg_b1 = InstanceConfig(seed=seed, n=n, m=m, cost_family="bilinear",
                            f_family="cconvexified_random")
    cfg_b2 = InstanceConfig(seed=seed + 1, n=n, m=m, cost_family="bilinear",
                            f_family="cconvexified_random")
    fb1, cost_b = generate_instance(cfg_b1)
    fb2, _ = generate_instance(cfg_b2)
    verdicts.append(check_mixture(fb1, fb2, cost_b, (0.25, 0.5, 0.75), tol)
                    .with_id("mixture_bilinear"))

    # neg_quadratic instances
    # J wide enough that convex test functions (x^2, |x|) keep their
    # neg-quadratic subgradient witnesses y = x + f'(x)/2 inside J
    cfg_q1 = InstanceConfig(seed=seed + 2, n=n, m=m, cost_family="neg_quadratic",
                            interval_j=(-2.5, 2.5), f_family="cconvexified_random")
    cfg_q2 = InstanceConfig(seed=seed + 3, n=n, m=m, cost_family="neg_quadratic",
                            interval_j=(-2.5, 2.5), f_family="cconvexified_random")
    fq1, cost_q = generate_instance(cfg_q1)
    fq2, _ = generate_instance(cfg_q2)
    verdicts.append(check_mixture(fq1, fq2, cost_q, (0.25, 0.5, 0.75), tol)
                    .with_id("mixture_neg_quadratic"))

    verdicts.append(check_order_propagation(fb1, fb2, cost_b, tol)
                    .with_id("order_propagation_bilinear"))
    verdicts.append(check_order_propagation(fq1, fq2, cost_q, tol)
                    .with_id("order_propagation_neg_quadratic"))

    # 2-affine contiguity: bilinear and c(x, y) = sin(x) y + x^2
    gated_b = fb1 if not falsify else generate_instance(
        InstanceConfig(seed=seed, n=n, m=m, cost_family="bilinear",
                       f_family=gated_family))[0]
    verdicts.append(check_subdiff_convexity(gated_b, cost_b, tol, pair_cap, seed, exhaustive)
                    .with_id("subdiff_convexity_bilinear"))
    from .costs import tabulate_callable
    grid_i = cost_b.grid_i
    grid_j = cost_b.grid_j
    cost_2aff = tabulate_callable(lambda x, y: np.sin(x) * y + x**2, grid_i, grid_j)
    seed_f = GridFunction(grid_i, _raw_function(
        InstanceConfig(seed=seed + 4), grid_i, np.random.default_rng(seed + 4),
        "random_smooth_fourier"))
    f_2aff = double_c_transform(seed_f, cost_2aff).values if not falsify else seed_f
    verdicts.append(check_subdiff_convexity(f_2aff, cost_2aff, tol, pair_cap, seed, exhaustive)
                    .with_id("subdiff_convexity_sinxy"))

    # concave 2-affine (fully affine) cost for the set-valued proposition
    cost_aff = tabulate_callable(lambda x, y: 0.4 * y + 0.25 * x + 0.1, grid_i, grid_j)
    f_aff_seed = GridFunction(grid_i, _raw_function(
        InstanceConfig(seed=seed + 5), grid_i, np.random.default_rng(seed + 5),
        "random_smooth_fourier"))
    f_aff = double_c_transform(f_aff_seed, cost_aff).values if not falsify else f_aff_seed
    verdicts.append(check_set_valued_convexity(f_aff, cost_aff, DEFAULT_LAMBDAS, tol,
                                               pair_cap, seed, exhaustive))

    # 1-concave cost propositions on neg_quadratic
    parabola = GridFunction(grid_i, grid_i.points**2)
    f_para = parabola if not falsify else GridFunction(grid_i, -grid_i.points**2)
    verdicts.append(check_intersection_inclusion(f_para, cost_q, (0.25, 0.5, 0.75), tol,
                                                 pair_cap, seed, exhaustive))
    verdicts.append(check_domain_interval(f_para, cost_q, tol, pair_cap, seed, exhaustive)
                    .with_id("domain_interval_parabola"))
    absf = _abs_value_function(grid_i)
    verdicts.append(check_domain_interval(absf if not falsify else
                                          _abs_value_function(grid_i, -1.0),
                                          cost_q, tol, pair_cap, seed, exhaustive)
                    .with_id("domain_interval_absval"))

    # gradient inclusion on analytic costs
    half_para = GridFunction(grid_i, 0.5 * grid_i.points**2)
    verdicts.append(check_grad_inclusion(half_para, CostSpec("bilinear"), cost_b, tol)
                    .with_id("grad_inclusion_bilinear"))
    verdicts.append(check_grad_inclusion(half_para, CostSpec("neg_quadratic"), cost_q, tol)
                    .with_id("grad_inclusion_neg_quadratic"))
    grid_r = make_uniform_grid(0.0, 0.4, n)
    cost_r = tabulate_cost(CostSpec("reflector"), grid_r, grid_r)
    slice_f = GridFunction(grid_r, cost_r.entries[:, n // 2])
    verdicts.append(check_grad_inclusion(slice_f, CostSpec("reflector"), cost_r, tol)
                    .with_id("grad_inclusion_reflector"))

    # self-support identity
    verdicts.append(check_cost_self_subdiff(cost_b).with_id("cost_self_subdiff_bilinear"))
    verdicts.append(check_cost_self_subdiff(cost_q).with_id("cost_self_subdiff_neg_quadratic"))
    verdicts.append(check_cost_self_subdiff(cost_r).with_id("cost_self_subdiff_reflector"))

    # local support iff, both branches on f = -|x|
    neg_abs = _abs_value_function(grid_i, -1.0)
    alpha_half = grid_i.nearest_index(0.5)
    alpha_zero = grid_i.nearest_index(0.0)
    verdicts.append(check_local_support_iff(neg_abs, cost_b, alpha_half, 0.25, tol)
                    .with_id("local_support_iff_affine_piece"))
    verdicts.append(check_local_support_iff(neg_abs, cost_b, alpha_zero, 0.25, tol)
                    .with_id("local_support_iff_concave_kink"))

    return verdicts
