"""Inclusion test for an intersection of equal-radius balls in another ball.

Writing ``C1`` for the intersection of closed balls ``B(c_k, R)`` and ``C0``
for the closed outer ball ``B(c, r)``, the question is whether
``C1 \\ int(C0)`` is empty, i.e. whether ``C1`` is included in the open outer
ball. Provided the outer center keeps its distance, ``d(c, C1) > R``, the
global minimizer of a convex piecewise function ``G`` lands inside
``C1 \\ int(C0)`` exactly when that set is nonempty, which turns the
non-convex membership question into one convex minimization plus a
membership check.

Each ``G_k`` is assembled from certified-convex nodes via the decomposition

    G_k = (f_k - f) + max(f, 0) + sum_{i != k} max(f_i, 0)

with ``f_k = ||x - c_k||^2 - R^2`` and ``f = ||x - c||^2 - r^2``; the first
term is affine and built in closed form. ``G`` is their pointwise maximum.
The literal formula ``f_k - min(f, 0) + sum max(f_i, 0)`` survives only in
test oracles.

The distance precondition is checked with Dykstra's projection algorithm,
which computes exact Euclidean projections onto the ball intersection.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .convexfn import Affine, BallQuad, ConvexFn, Max, PositivePart, Sum
from .errors import DimensionMismatch, EmptyIntersection, PreconditionFailed
from .feasibility import ConstraintSet, FeasibilityVerdict, check_feasibility
from .geometry import Ball, Vector, as_vector
from .minimize import MinimizeResult, SolverConfig, refine_minimum

log = logging.getLogger("hullscope.inclusion")

# The minimizer of G generically sits on the boundary sphere of the outer
# ball, so the boundary-side tolerance must absorb solver noise; verdicts are
# discriminated by the ball residuals, not by the boundary slack.
_BOUNDARY_TOL_FLOOR = 1e-6


@dataclass(frozen=True)
class BallIntersection:
    """Intersection of m closed balls with a common radius R > 0."""

    centers: tuple[Vector, ...]
    radius: float

    def __init__(self, centers, radius: float):
        centers = tuple(as_vector(c) for c in centers)
        if not centers:
            raise ValueError("need at least one center")
        dim = centers[0].shape[0]
        for c in centers:
            if c.shape[0] != dim:
                raise DimensionMismatch("all centers must share the ambient dimension")
        r = float(radius)
        if not (math.isfinite(r) and r > 0):
            raise ValueError("radius must be a finite positive number")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return self.centers[0].shape[0]

    @property
    def m(self) -> int:
        return len(self.centers)

    def balls(self) -> list[Ball]:
        return [Ball(c, self.radius) for c in self.centers]

    def residuals(self, x) -> np.ndarray:
        """Values f_k(x) = ||x - c_k||^2 - R^2 for every k."""
        x = np.asarray(x, dtype=np.float64)
        r2 = self.radius * self.radius
        return np.array([float((d := x - c) @ d) - r2 for c in self.centers])

    def constraint_set(self) -> ConstraintSet:
        r2 = self.radius * self.radius
        return ConstraintSet([BallQuad(c, -r2) for c in self.centers])


@dataclass(frozen=True)
class OuterBall:
    """The outer ball B(c, r) the intersection is tested against."""

    center: Vector
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise ValueError("radius must be a finite positive number")
        object.__setattr__(self, "radius", r)


class InclusionVerdict(enum.Enum):
    NONEMPTY_DIFFERENCE = "nonempty_difference"
    INCLUDED = "included"
    UNDETERMINED = "undetermined"


@dataclass
class InclusionReport:
    """Minimizer of G, its membership residuals, and the verdict.

    ``precondition_margin`` is ``d(c, C1) - R``; it is strictly positive on
    every report (otherwise ``PreconditionFailed`` is raised instead).
    """

    verdict: InclusionVerdict
    x_star: np.ndarray
    g_at_xstar: float
    residuals_fk: list[float]
    dist_xstar_to_c: float
    precondition_margin: float
    iters: int


@dataclass
class ProjectionResult:
    """Dykstra output: the projection point plus convergence evidence.

    ``last_shift`` is the point displacement over the final sweep; it bounds
    how much another sweep could still move the result.
    """

    point: np.ndarray
    converged: bool
    sweeps: int
    max_violation: float
    last_shift: float


def _dykstra(projectors, y, iters: int, tol: float) -> tuple[np.ndarray, bool, int, float]:
    """Dykstra's alternating projections with correction terms.

    ``projectors`` map a point to its Euclidean projection onto one convex
    set; the limit is the projection onto the intersection.
    """
    x = np.array(y, dtype=np.float64)
    m = len(projectors)
    corrections = [np.zeros_like(x) for _ in range(m)]
    converged = False
    sweep = 0
    shift = math.inf
    for sweep in range(1, iters + 1):
        x_prev = x
        for i in range(m):
            z = x + corrections[i]
            x = projectors[i](z)
            corrections[i] = z - x
        shift = float(np.linalg.norm(x - x_prev))
        if shift <= tol:
            converged = True
            break
    return x, converged, sweep, shift


def _ball_projector(center: np.ndarray, radius: float):
    def proj(u):
        d = u - center
        nd = float(np.linalg.norm(d))
        if nd <= radius:
            return u
        return center + (radius / nd) * d

    return proj


def dykstra_project_full(balls, y, iters: int = 1000, tol: float = 1e-11) -> ProjectionResult:
    """Project ``y`` onto the intersection of closed balls, with diagnostics.

    The caller is responsible for the intersection being nonempty (certify
    via ``check_feasibility`` first); on an empty intersection the iteration
    cannot converge and the result comes back flagged.
    """
    balls = list(balls)
    if not balls:
        raise ValueError("need at least one ball")
    y = np.asarray(y, dtype=np.float64)
    for b in balls:
        if b.center.shape[0] != y.shape[0]:
            raise DimensionMismatch("point and balls must share the ambient dimension")
    projectors = [_ball_projector(b.center, b.radius) for b in balls]
    point, converged, sweeps, shift = _dykstra(projectors, y, iters, tol)
    violation = max(
        max(0.0, float(np.linalg.norm(point - b.center)) - b.radius) for b in balls
    )
    return ProjectionResult(point=point, converged=converged, sweeps=sweeps,
                            max_violation=violation, last_shift=shift)


def dykstra_project(balls, y, iters: int = 1000, tol: float = 1e-11) -> np.ndarray:
    """Euclidean projection of ``y`` onto the intersection of closed balls."""
    res = dykstra_project_full(balls, y, iters=iters, tol=tol)
    if not res.converged:
        # a tiny last shift means the point is essentially settled; only a
        # large one deserves attention
        level = logging.WARNING if res.last_shift > 1e-6 else logging.DEBUG
        log.log(level, "Dykstra projection stopped after %d sweeps (last shift %.3e, violation %.3e)",
                res.sweeps, res.last_shift, res.max_violation)
    return res.point


def build_Gk(bi: BallIntersection, ob: OuterBall, k: int) -> ConvexFn:
    """Convex witness G_k for constraint index ``k`` (zero-based).

    Tree shape: affine(f_k - f) + max(f, 0) + sum_{i != k} max(f_i, 0).
    Every node is convex by construction.
    """
    m = bi.m
    if not (0 <= k < m):
        raise IndexError(f"constraint index {k} out of range for m = {m}")
    if ob.center.shape[0] != bi.dim:
        raise DimensionMismatch("outer ball and intersection must share the ambient dimension")
    ck = bi.centers[k]
    c = ob.center
    R2 = bi.radius * bi.radius
    r2 = ob.radius * ob.radius
    # f_k - f collapses to the affine function -2 (c_k - c).x + |c_k|^2 - |c|^2 - R^2 + r^2
    a = -2.0 * (ck - c)
    b = float(ck @ ck) - float(c @ c) - R2 + r2
    terms: list[ConvexFn] = [Affine(a, b), PositivePart(BallQuad(c, -r2))]
    terms.extend(PositivePart(BallQuad(bi.centers[i], -R2)) for i in range(m) if i != k)
    return Sum(terms)


def build_G(bi: BallIntersection, ob: OuterBall) -> Max:
    """Pointwise maximum of the G_k; the achieving index is exposed at eval."""
    return Max([build_Gk(bi, ob, k) for k in range(bi.m)])


def _find_point_in_intersection(bi: BallIntersection, cfg: SolverConfig) -> np.ndarray:
    report = check_feasibility(bi.constraint_set(), cfg=cfg)
    if report.verdict is not FeasibilityVerdict.FEASIBLE:
        raise EmptyIntersection(
            f"ball intersection not certified nonempty (verdict {report.verdict.value}, "
            f"merit minimum {report.g_tilde_min:.3e})")
    return np.asarray(report.witness, dtype=np.float64)


def _precondition_margin(bi: BallIntersection, c: np.ndarray, tol: float) -> float:
    proj = dykstra_project_full(bi.balls(), c)
    if not proj.converged:
        level = logging.WARNING if proj.last_shift > 1e-6 else logging.DEBUG
        log.log(level, "distance-precondition projection stopped after %d sweeps (last shift %.3e)",
                proj.sweeps, proj.last_shift)
    d = float(np.linalg.norm(c - proj.point))
    return d - bi.radius


def _classify(bi: BallIntersection, ob: OuterBall, x: np.ndarray, tol: float) -> InclusionVerdict:
    res = bi.residuals(x)
    a = float(np.max(res))
    b = ob.radius * ob.radius - float((x - ob.center) @ (x - ob.center))
    tol_bnd = max(_BOUNDARY_TOL_FLOOR, 10.0 * tol)
    if a <= tol and b <= tol_bnd:
        # the minimizer certifies membership; boundary contact counts as
        # membership because the set difference keeps the boundary sphere
        return InclusionVerdict.NONEMPTY_DIFFERENCE
    if a > 10.0 * tol or b > 10.0 * tol_bnd:
        # definitely not a member, so by the localization result the
        # difference is empty
        return InclusionVerdict.INCLUDED
    return InclusionVerdict.UNDETERMINED


def _inclusion_at(bi: BallIntersection, ob: OuterBall, cfg: SolverConfig,
                  start: np.ndarray, margin: float) -> InclusionReport:
    G = build_G(bi, ob)
    gap = max(cfg.tol / 100.0, 1e-12)
    res: MinimizeResult = refine_minimum(
        G, start, lower_bound=-(bi.radius * bi.radius), value_gap=gap)
    x_star = res.x_best
    verdict = _classify(bi, ob, x_star, cfg.tol)
    return InclusionReport(
        verdict=verdict,
        x_star=x_star,
        g_at_xstar=float(res.f_best),
        residuals_fk=[float(v) for v in bi.residuals(x_star)],
        dist_xstar_to_c=float(np.linalg.norm(x_star - ob.center)),
        precondition_margin=float(margin),
        iters=res.iters,
    )


def check_inclusion(bi: BallIntersection, ob: OuterBall,
                    cfg: SolverConfig | None = None) -> InclusionReport:
    """Decide whether the ball intersection minus the open outer ball is empty.

    Pipeline: certify the intersection nonempty (its witness is the start
    point), verify the distance precondition ``d(c, C1) > R`` via Dykstra
    projection, minimize ``G`` and classify the minimizer by membership.

    Raises
    ------
    EmptyIntersection
        If the intersection cannot be certified nonempty.
    PreconditionFailed
        If ``d(c, C1) - R`` is not above the configured tolerance; no sound
        verdict exists in that regime.
    """
    if cfg is None:
        cfg = SolverConfig()
    if ob.center.shape[0] != bi.dim:
        raise DimensionMismatch("outer ball and intersection must share the ambient dimension")
    witness = _find_point_in_intersection(bi, cfg)
    margin = _precondition_margin(bi, ob.center, cfg.tol)
    if margin <= cfg.tol:
        raise PreconditionFailed(
            f"outer center too close to the intersection: d(c, C1) - R = {margin:.6e}")
    return _inclusion_at(bi, ob, cfg, witness, margin)
