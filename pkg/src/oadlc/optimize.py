"""Constrained minimum-weight design search over (W, alpha, n).

The search enumerates the integer crease count n exactly and, for each n,
seeds a dense (W, alpha) grid and polishes the best feasible seed with a
derivative-free simplex.  `exhaustive_search` is an independent plain
enumeration used to cross-check the optimizer.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import units
from .core import (Assembly, LayerSpec, Material, circular_layer, cos_half,
                   folded_dimensions, identical_assembly, mass, pipeline_D,
                   pipeline_K, sin_half, square_layer)
from .errors import DomainError, InfeasibleError

# Relative feasibility tolerance applied to every inequality.
FEAS_RTOL = 1e-9

# Fold-angle search box is kept strictly inside (0, pi) to avoid the
# degenerate fully-closed and fully-flat corners during optimization.
ALPHA_SEARCH_MIN = 1e-9
ALPHA_SEARCH_MAX = math.pi - 1e-9

SQUARE = "square"
CIRCULAR = "circular"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _scale(bound: float) -> float:
    return max(abs(bound), 1e-12)


@dataclass(frozen=True)
class DesignConstraints:
    """Design constraint set (SI units).

    L_fab         largest dimension the fabrication tool can cut, m
    L_min, L_max  folded chordwise extent bounds, m
    t_min, t_max  folded stack thickness bounds, m
    K_min         optional in-plane stiffness floor along eta, N/m
    D_min         optional bending stiffness floor about eta, N*m
    W_bounds      search box for the panel width, m
    n_bounds      search range for the crease count
    alpha_bounds  search box for the fold angle, rad
    eta           direction the stiffness floors apply to, rad
    layout        "square" or "circular" (circular requires R, m)
    """

    L_fab: float
    L_min: float
    L_max: float
    t_min: float
    t_max: float
    K_min: float | None = None
    D_min: float | None = None
    W_bounds: tuple[float, float] = (1e-3, 50e-3)
    n_bounds: tuple[int, int] = (1, 200)
    alpha_bounds: tuple[float, float] = (math.radians(5.0), math.radians(175.0))
    eta: float = 0.0
    layout: str = SQUARE
    R: float | None = None

    def __post_init__(self):
        for name in ("L_fab", "L_min", "L_max", "t_min", "t_max"):
            v = getattr(self, name)
            _require(isinstance(v, (int, float)) and math.isfinite(v) and v >= 0,
                     f"{name} must be a finite non-negative length, got {v}")
        _require(self.L_fab > 0, "L_fab must be positive")
        _require(self.L_min <= self.L_max, "need L_min <= L_max")
        _require(self.t_min <= self.t_max, "need t_min <= t_max")
        _require(self.K_min is not None or self.D_min is not None,
                 "at least one stiffness floor (K_min or D_min) is required")
        for name in ("K_min", "D_min"):
            v = getattr(self, name)
            if v is not None:
                _require(math.isfinite(v) and v >= 0, f"{name} must be >= 0, got {v}")
        w_lo, w_hi = self.W_bounds
        _require(math.isfinite(w_lo) and math.isfinite(w_hi) and 0 < w_lo <= w_hi,
                 f"degenerate W search box {self.W_bounds}")
        n_lo, n_hi = self.n_bounds
        _require(isinstance(n_lo, int) and isinstance(n_hi, int) and 1 <= n_lo <= n_hi,
                 f"degenerate n search range {self.n_bounds}")
        a_lo, a_hi = (float(self.alpha_bounds[0]), float(self.alpha_bounds[1]))
        _require(math.isfinite(a_lo) and math.isfinite(a_hi),
                 "alpha bounds must be finite")
        a_lo = min(max(a_lo, ALPHA_SEARCH_MIN), ALPHA_SEARCH_MAX)
        a_hi = min(max(a_hi, ALPHA_SEARCH_MIN), ALPHA_SEARCH_MAX)
        object.__setattr__(self, "alpha_bounds", (a_lo, a_hi))
        _require(a_lo <= a_hi, f"degenerate alpha search box {self.alpha_bounds}")
        _require(math.isfinite(self.eta), "eta must be finite")
        _require(self.layout in (SQUARE, CIRCULAR),
                 f"layout must be 'square' or 'circular', got {self.layout!r}")
        if self.layout == CIRCULAR:
            _require(self.R is not None and math.isfinite(self.R) and self.R > 0,
                     "circular layout requires a positive radius R")


@dataclass(frozen=True)
class ConstraintCheck:
    """One evaluated inequality: slack >= 0 means satisfied."""

    name: str
    value: float
    bound: float
    slack: float
    scale: float

    @property
    def ok(self) -> bool:
        return self.slack >= -FEAS_RTOL * self.scale


@dataclass(frozen=True)
class FeasibilityReport:
    checks: tuple[ConstraintCheck, ...]
    K_eta: float | None = None
    D_eta: float | None = None

    @property
    def feasible(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def worst(self) -> ConstraintCheck:
        return min(self.checks, key=lambda c: c.slack / c.scale)

    def violation(self) -> float:
        """Largest normalized violation; <= 0 when feasible."""
        return max(-c.slack / c.scale for c in self.checks)


def _build_layer(material: Material, W: float, alpha: float, n: int,
                 c: DesignConstraints) -> LayerSpec:
    if c.layout == CIRCULAR:
        return circular_layer(material, W, alpha, n, c.R)
    return square_layer(material, W, alpha, n)


def _geometric_checks(W: float, alpha: float, n: int,
                      c: DesignConstraints) -> list[ConstraintCheck]:
    """Layout and fabrication inequalities, in fixed evaluation order."""
    pitch = W * sin_half(alpha)
    folded = (n + 1) * pitch
    td = 2.0 * W * cos_half(alpha)
    flat = (n + 1) * W
    checks = []
    if c.layout == CIRCULAR:
        outermost = 0.5 * (folded - pitch)  # farthest panel center from disk center
        checks.append(ConstraintCheck("disk_fit", outermost, c.R,
                                      c.R - outermost, _scale(c.R)))
        c_min = abs(pitch - 0.5 * folded) if n >= 1 else 0.0
        for j in range(1, n + 1):
            c_min = min(c_min, abs(j * pitch - 0.5 * folded))
        crease_max = 2.0 * math.sqrt(max(c.R * c.R - c_min * c_min, 0.0))
    else:
        crease_max = folded
    checks.append(ConstraintCheck("flat_within_fab", flat, c.L_fab,
                                  c.L_fab - flat, _scale(c.L_fab)))
    checks.append(ConstraintCheck("crease_within_fab", crease_max, c.L_fab,
                                  c.L_fab - crease_max, _scale(c.L_fab)))
    checks.append(ConstraintCheck("folded_length_min", folded, c.L_min,
                                  folded - c.L_min, _scale(c.L_min)))
    checks.append(ConstraintCheck("folded_length_max", folded, c.L_max,
                                  c.L_max - folded, _scale(c.L_max)))
    checks.append(ConstraintCheck("thickness_min", td, c.t_min,
                                  td - c.t_min, _scale(c.t_min)))
    checks.append(ConstraintCheck("thickness_max", td, c.t_max,
                                  c.t_max - td, _scale(c.t_max)))
    return checks


def _geometric_violation(W: float, alpha: float, n: int,
                         c: DesignConstraints) -> tuple[float, str]:
    """Largest normalized violation over the layout/fabrication
    inequalities and its constraint name.  Mirrors `_geometric_checks`
    without building report objects; used in enumeration hot loops."""
    pitch = W * sin_half(alpha)
    folded = (n + 1) * pitch
    td = 2.0 * W * cos_half(alpha)
    flat = (n + 1) * W
    worst, name = (flat - c.L_fab) / _scale(c.L_fab), "flat_within_fab"
    pairs = [
        ((c.L_min - folded) / _scale(c.L_min), "folded_length_min"),
        ((folded - c.L_max) / _scale(c.L_max), "folded_length_max"),
        ((c.t_min - td) / _scale(c.t_min), "thickness_min"),
        ((td - c.t_max) / _scale(c.t_max), "thickness_max"),
    ]
    if c.layout == CIRCULAR:
        outermost = 0.5 * (folded - pitch)
        pairs.append(((outermost - c.R) / _scale(c.R), "disk_fit"))
        c_min = min(abs(j * pitch - 0.5 * folded) for j in range(1, n + 1))
        crease_max = 2.0 * math.sqrt(max(c.R * c.R - c_min * c_min, 0.0))
        pairs.append(((crease_max - c.L_fab) / _scale(c.L_fab), "crease_within_fab"))
    else:
        pairs.append(((folded - c.L_fab) / _scale(c.L_fab), "crease_within_fab"))
    for v, nm in pairs:
        if v > worst:
            worst, name = v, nm
    return worst, name


def check_feasible(material: Material, W: float, alpha: float, n: int,
                   c: DesignConstraints, unit_count: str = "n") -> FeasibilityReport:
    """Evaluate every design constraint at one candidate (W, alpha, n).

    Infeasibility is a result, not an error.  Stiffness floors are skipped
    (and reported as None) only when the layout itself cannot be built,
    e.g. a circular fold pattern that does not fit its disk.
    """
    checks = _geometric_checks(W, alpha, n, c)
    K_eta = D_eta = None
    try:
        layer = _build_layer(material, W, alpha, n, c)
    except DomainError:
        layer = None
    if layer is not None:
        a = identical_assembly(layer)
        K_eta = pipeline_K(a, c.eta, unit_count)
        D_eta = pipeline_D(a, c.eta, unit_count)
        if c.K_min is not None:
            checks.append(ConstraintCheck("inplane_min", K_eta, c.K_min,
                                          K_eta - c.K_min, _scale(c.K_min)))
        if c.D_min is not None:
            checks.append(ConstraintCheck("bending_min", D_eta, c.D_min,
                                          D_eta - c.D_min, _scale(c.D_min)))
    return FeasibilityReport(tuple(checks), K_eta=K_eta, D_eta=D_eta)


def _design_mass(material: Material, W: float, alpha: float, n: int,
                 c: DesignConstraints, connector_allowance: float) -> float:
    """Assembly mass of the (identical-layer) candidate via the core model."""
    layer = _build_layer(material, W, alpha, n, c)
    return mass(identical_assembly(layer), connector_allowance)


@dataclass(frozen=True)
class DesignSolution:
    """Feasible minimum-mass design plus its verification data (SI)."""

    W: float
    alpha: float
    n: int
    K_eta: float
    D_eta: float
    mass: float
    folded_length: float
    folded_thickness: float
    eta: float
    layout: str
    R: float | None
    report: FeasibilityReport
    evaluations: int
    wall_time: float  # seconds; informational only, never serialized

    def key(self) -> tuple:
        return (self.mass, self.n, self.W, self.alpha)


@dataclass(frozen=True)
class CandidateRow:
    """One row of a naive-design comparison table."""

    W: float
    alpha: float
    n: int
    feasible: bool
    K_eta: float | None
    D_eta: float | None
    mass: float
    report: FeasibilityReport


def _finish_solution(material: Material, W: float, alpha: float, n: int,
                     c: DesignConstraints, connector_allowance: float,
                     unit_count: str, evaluations: int,
                     wall_time: float) -> DesignSolution:
    layer = _build_layer(material, W, alpha, n, c)
    a = identical_assembly(layer)
    folded, td = folded_dimensions(layer)
    return DesignSolution(
        W=W, alpha=alpha, n=n,
        K_eta=pipeline_K(a, c.eta, unit_count),
        D_eta=pipeline_D(a, c.eta, unit_count),
        mass=mass(a, connector_allowance),
        folded_length=folded,
        folded_thickness=td,
        eta=c.eta,
        layout=c.layout,
        R=c.R,
        report=check_feasible(material, W, alpha, n, c, unit_count),
        evaluations=evaluations,
        wall_time=wall_time,
    )


# ---------------------------------------------------------------------------
# Vectorized per-n grid scan used by `optimize`


def _grid_masks(material: Material, Wg: np.ndarray, Ag: np.ndarray, n: int,
                c: DesignConstraints, connector_allowance: float):
    """Geometric feasibility mask, candidate mass, and worst normalized
    geometric violation on a flattened (W, alpha) grid."""
    s = np.sin(0.5 * Ag)
    ch = np.sin(0.5 * (math.pi - Ag))
    pitch = Wg * s
    folded = (n + 1) * pitch
    td = 2.0 * Wg * ch
    flat = (n + 1) * Wg

    viols = [
        (flat - c.L_fab) / _scale(c.L_fab),
        (c.L_min - folded) / _scale(c.L_min),
        (folded - c.L_max) / _scale(c.L_max),
        (c.t_min - td) / _scale(c.t_min),
        (td - c.t_max) / _scale(c.t_max),
    ]
    if c.layout == CIRCULAR:
        outermost = 0.5 * (folded - pitch)
        viols.append((outermost - c.R) / _scale(c.R))
        # chord at the fold line closest to the disk center
        half = 0.5 * folded
        c_min = np.abs(pitch - half)
        for j in range(2, n + 1):
            c_min = np.minimum(c_min, np.abs(j * pitch - half))
        crease_max = 2.0 * np.sqrt(np.maximum(c.R * c.R - c_min * c_min, 0.0))
        viols.append((crease_max - c.L_fab) / _scale(c.L_fab))
        # panel areas clipped to the disk
        centers = (np.arange(1, n + 2) - 0.5)[:, None] * pitch[None, :] - half[None, :]
        chords = 2.0 * np.sqrt(np.maximum(c.R * c.R - centers ** 2, 0.0))
        area = Wg * chords.sum(axis=0)
    else:
        viols.append((folded - c.L_fab) / _scale(c.L_fab))  # crease_within_fab
        area = Wg * (n + 1) * folded

    rho_t = material.rho * material.t
    grid_mass = 2.0 * (1.0 + connector_allowance) * rho_t * area
    violation = np.maximum.reduce(viols)
    return violation <= FEAS_RTOL, grid_mass, violation


def _scan_n(material: Material, n: int, Wg: np.ndarray, Ag: np.ndarray,
            c: DesignConstraints, connector_allowance: float, unit_count: str):
    """Best feasible grid point for one crease count.

    Returns (best, diagnostic, evaluations) where best is
    (mass, n, W, alpha) or None and diagnostic is the least-violating point
    (violation, W, alpha, n, worst_name).
    """
    ok, grid_mass, violation = _grid_masks(material, Wg, Ag, n, c, connector_allowance)
    evaluations = Wg.size

    i_diag = int(np.argmin(violation))
    diag = (float(violation[i_diag]), float(Wg[i_diag]), float(Ag[i_diag]), n, None)

    idx = np.nonzero(ok)[0]
    best = None
    if idx.size:
        order = np.lexsort((Ag[idx], Wg[idx], grid_mass[idx]))
        for k in order:
            i = int(idx[k])
            W = float(Wg[i])
            alpha = float(Ag[i])
            rep = check_feasible(material, W, alpha, n, c, unit_count)
            evaluations += 1
            if rep.feasible:
                m = _design_mass(material, W, alpha, n, c, connector_allowance)
                best = (m, n, W, alpha)
                break
            v = rep.violation()
            if v < diag[0]:
                diag = (v, W, alpha, n, rep.worst.name)
    return best, diag, evaluations


# ---------------------------------------------------------------------------
# Derivative-free simplex polish


def _nelder_mead(f, x0, steps, lo, hi, max_iter=400, rtol=1e-10):
    """Minimize f over a box with a reflection/expansion/contraction simplex.

    Fully deterministic: fixed iteration policy, ties broken by vertex
    coordinates.  Returns (x_best, f_best, evaluations).
    """

    def clip(x):
        return tuple(min(max(v, l), h) for v, l, h in zip(x, lo, hi))

    verts = [clip(x0)]
    for i, d in enumerate(steps):
        x = list(x0)
        x[i] += d
        verts.append(clip(tuple(x)))
    vals = [f(v) for v in verts]
    evals = len(verts)

    for _ in range(max_iter):
        order = sorted(range(len(verts)), key=lambda i: (vals[i], verts[i]))
        verts = [verts[i] for i in order]
        vals = [vals[i] for i in order]
        f_spread = abs(vals[-1] - vals[0])
        x_spread = max(abs(a - b) for va, vb in zip(verts[:-1], verts[1:])
                       for a, b in zip(va, vb))
        if (f_spread <= rtol * (abs(vals[0]) + 1e-300)
                and x_spread <= rtol * (1.0 + max(map(abs, verts[0])))):
            break

        centroid = tuple(sum(v[i] for v in verts[:-1]) / (len(verts) - 1)
                         for i in range(len(verts[0])))
        worst = verts[-1]
        refl = clip(tuple(cc + (cc - w) for cc, w in zip(centroid, worst)))
        f_refl = f(refl)
        evals += 1
        if vals[0] <= f_refl < vals[-2]:
            verts[-1], vals[-1] = refl, f_refl
        elif f_refl < vals[0]:
            exp = clip(tuple(cc + 2.0 * (cc - w) for cc, w in zip(centroid, worst)))
            f_exp = f(exp)
            evals += 1
            if f_exp < f_refl:
                verts[-1], vals[-1] = exp, f_exp
            else:
                verts[-1], vals[-1] = refl, f_refl
        else:
            cont = clip(tuple(cc + 0.5 * (w - cc) for cc, w in zip(centroid, worst)))
            f_cont = f(cont)
            evals += 1
            if f_cont < vals[-1]:
                verts[-1], vals[-1] = cont, f_cont
            else:
                for i in range(1, len(verts)):
                    verts[i] = clip(tuple(b + 0.5 * (v - b)
                                          for b, v in zip(verts[0], verts[i])))
                    vals[i] = f(verts[i])
                    evals += 1

    i_best = min(range(len(verts)), key=lambda i: (vals[i], verts[i]))
    return verts[i_best], vals[i_best], evals


def _polish(material: Material, seed, c: DesignConstraints,
            connector_allowance: float, unit_count: str, dW: float, dA: float):
    """Local continuous refinement of one (W, alpha) seed at fixed n."""
    m_seed, n, W0, a0 = seed
    w_lo, w_hi = c.W_bounds
    a_lo, a_hi = c.alpha_bounds

    def objective(x):
        W, alpha = x
        rep = check_feasible(material, W, alpha, n, c, unit_count)
        m = _design_mass(material, W, alpha, n, c, connector_allowance)
        v = rep.violation()
        if v <= FEAS_RTOL:
            return m
        return m + m_seed * (10.0 + 1e3 * v)

    (W, alpha), _, evals = _nelder_mead(
        objective, (W0, a0), (0.5 * dW, 0.5 * dA), (w_lo, a_lo), (w_hi, a_hi))
    rep = check_feasible(material, W, alpha, n, c, unit_count)
    if not rep.feasible:
        return None, evals
    m = _design_mass(material, W, alpha, n, c, connector_allowance)
    return (m, n, W, alpha), evals


def optimize(material: Material, c: DesignConstraints, *,
             connector_allowance: float = 0.0, unit_count: str = "n",
             seed_grid: tuple[int, int] = (64, 64), polish: bool = True,
             workers: int = 0) -> DesignSolution:
    """Minimum-mass feasible design over the constraint search box.

    Deterministic: identical inputs produce identical solutions; ties are
    broken lexicographically by (mass, n, W, alpha).  `workers` > 1 scans
    the crease counts in a thread pool; the reduction is order-independent
    so the result does not change.
    """
    t0 = time.perf_counter()
    w_lo, w_hi = c.W_bounds
    a_lo, a_hi = c.alpha_bounds
    n_lo, n_hi = c.n_bounds
    nW = max(int(seed_grid[0]), 2)
    nA = max(int(seed_grid[1]), 2)
    W_axis = np.linspace(w_lo, w_hi, nW)
    A_axis = np.linspace(a_lo, a_hi, nA)
    Wg = np.repeat(W_axis, nA)
    Ag = np.tile(A_axis, nW)
    dW = (w_hi - w_lo) / (nW - 1) if w_hi > w_lo else max(w_lo * 1e-3, 1e-9)
    dA = (a_hi - a_lo) / (nA - 1) if a_hi > a_lo else 1e-6

    n_values = list(range(n_lo, n_hi + 1))

    def scan(n):
        return _scan_n(material, n, Wg, Ag, c, connector_allowance, unit_count)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, n_values))
    else:
        results = [scan(n) for n in n_values]

    evaluations = sum(r[2] for r in results)
    seeds = sorted(r[0] for r in results if r[0] is not None)

    if not seeds:
        diag = min(r[1] for r in results)
        v, W, alpha, n, worst = diag
        if worst is None:
            worst = check_feasible(material, W, alpha, n, c, unit_count).worst.name
        raise InfeasibleError(
            "no feasible design in the search box; least-violating candidate "
            f"W={units.m_to_mm(W):.6g} mm, n={n}, "
            f"alpha={units.rad_to_deg(alpha):.6g} deg still fails "
            f"'{worst}' (normalized violation {v:.3g})",
            worst_point=(W, alpha, n), worst_constraint=worst)

    best = seeds[0]
    if polish:
        for seed in seeds[:3]:
            polished, ev = _polish(material, seed, c, connector_allowance,
                                   unit_count, dW, dA)
            evaluations += ev
            if polished is not None and polished < best:
                best = polished

    m, n, W, alpha = best
    return _finish_solution(material, W, alpha, n, c, connector_allowance,
                            unit_count, evaluations, time.perf_counter() - t0)


def exhaustive_search(material: Material, c: DesignConstraints, *,
                      resolution: tuple[float, float] = (0.5e-3, math.radians(1.0)),
                      connector_allowance: float = 0.0,
                      unit_count: str = "n") -> DesignSolution:
    """Full enumeration of the discretized search box.

    Independent of `optimize`: a plain triple loop over (n, W, alpha) with
    the same tie-breaking, used as the verification oracle.
    """
    t0 = time.perf_counter()
    dW, dA = resolution
    _require(dW > 0 and dA > 0, f"grid resolution must be positive, got {resolution}")
    w_lo, w_hi = c.W_bounds
    a_lo, a_hi = c.alpha_bounds
    n_lo, n_hi = c.n_bounds
    W_axis = [w_lo + k * dW for k in range(int((w_hi - w_lo) / dW + 1e-9) + 1)]
    A_axis = [a_lo + k * dA for k in range(int((a_hi - a_lo) / dA + 1e-9) + 1)]

    best = None
    diag = None
    evaluations = 0
    for n in range(n_lo, n_hi + 1):
        for W in W_axis:
            for alpha in A_axis:
                evaluations += 1
                v_geo, worst_name = _geometric_violation(W, alpha, n, c)
                if v_geo > FEAS_RTOL:
                    if diag is None or v_geo < diag[0]:
                        diag = (v_geo, W, alpha, n, worst_name)
                    continue
                rep = check_feasible(material, W, alpha, n, c, unit_count)
                if not rep.feasible:
                    v = rep.violation()
                    if diag is None or v < diag[0]:
                        diag = (v, W, alpha, n, rep.worst.name)
                    continue
                m = _design_mass(material, W, alpha, n, c, connector_allowance)
                key = (m, n, W, alpha)
                if best is None or key < best:
                    best = key

    if best is None:
        if diag is None:
            raise InfeasibleError("empty search grid", None, None)
        v, W, alpha, n, worst = diag
        raise InfeasibleError(
            "no feasible design on the search grid; least-violating candidate "
            f"W={units.m_to_mm(W):.6g} mm, n={n}, "
            f"alpha={units.rad_to_deg(alpha):.6g} deg still fails "
            f"'{worst}' (normalized violation {v:.3g})",
            worst_point=(W, alpha, n), worst_constraint=worst)

    m, n, W, alpha = best
    return _finish_solution(material, W, alpha, n, c, connector_allowance,
                            unit_count, evaluations, time.perf_counter() - t0)


def naive_designs_report(material: Material, c: DesignConstraints,
                         candidates, *, connector_allowance: float = 0.0,
                         unit_count: str = "n") -> tuple[CandidateRow, ...]:
    """Evaluate explicit (W, n, alpha) candidates and sort them by mass."""
    cands = [tuple(x) for x in candidates]
    _require(len(cands) > 0, "candidate list must be non-empty")
    rows = []
    for W, n, alpha in cands:
        rep = check_feasible(material, W, alpha, n, c, unit_count)
        try:
            m = _design_mass(material, W, alpha, n, c, connector_allowance)
        except DomainError:
            m = math.inf  # layout cannot be built (e.g. does not fit the disk)
        rows.append(CandidateRow(W=W, alpha=alpha, n=n, feasible=rep.feasible,
                                 K_eta=rep.K_eta, D_eta=rep.D_eta, mass=m,
                                 report=rep))
    rows.sort(key=lambda r: (r.mass, r.n, r.W, r.alpha))
    return tuple(rows)
