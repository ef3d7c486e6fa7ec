"""Feasibility certificates for intersections of convex sub-level sets.

The merit function is the sum of positive parts of the constraint functions:
it is zero exactly on the feasible set and positive elsewhere, so the
intersection is nonempty if and only if the global minimum is zero. The
checker minimizes it with a Polyak step targeting zero (fast certificate for
the feasible case) and, when that stalls above zero, refines the minimum
estimate to classify the instance.

Verdicts are three-valued: a stalled subgradient run is evidence, not proof,
so values landing in the gray band ``[tol, 10 tol]`` come back Undetermined.
Tolerances are absolute; callers should pre-scale badly scaled problems.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .convexfn import BallQuad, ConvexFn, PositivePart, Sum
from .errors import DimensionMismatch
from .geometry import Vector
from .minimize import MinimizeResult, PolyakWithTarget, SolverConfig, minimize, refine_minimum


@dataclass(frozen=True)
class ConstraintSet:
    """Convex constraint functions g_k sharing one ambient dimension."""

    constraints: tuple[ConvexFn, ...]
    dimension: int

    def __init__(self, constraints, dimension: int | None = None):
        constraints = tuple(constraints)
        if not constraints:
            raise ValueError("need at least one constraint")
        dim = constraints[0].dim if dimension is None else int(dimension)
        for g in constraints:
            if g.dim != dim:
                raise DimensionMismatch("all constraints must share the ambient dimension")
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "dimension", dim)

    @property
    def m(self) -> int:
        return len(self.constraints)

    def residuals(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return np.array([g.eval(x)[0] for g in self.constraints])


class FeasibilityVerdict(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNDETERMINED = "undetermined"


@dataclass
class FeasibilityReport:
    """Verdict plus the evidence backing it.

    ``witness`` is a feasible point when the verdict is Feasible, else None.
    ``residuals`` are constraint values at the best iterate found and
    ``g_tilde_min`` is the best (smallest) merit value observed -- an upper
    bound on the true minimum, reported as the infeasibility certificate
    candidate when positive.
    """

    verdict: FeasibilityVerdict
    witness: Vector | None
    residuals: list[float]
    g_tilde_min: float
    iters: int


def build_g_tilde(cs: ConstraintSet) -> ConvexFn:
    """Merit function: sum of positive parts of the constraints."""
    return Sum([PositivePart(g) for g in cs.constraints])


def default_start(cs: ConstraintSet) -> np.ndarray:
    """Centroid of ball centers when every constraint is a ball, else zero."""
    if all(isinstance(g, BallQuad) for g in cs.constraints):
        return np.mean([g.center for g in cs.constraints], axis=0)
    return np.zeros(cs.dimension)


def check_feasibility(cs: ConstraintSet, x0=None, cfg: SolverConfig | None = None) -> FeasibilityReport:
    """Certify the intersection of the sub-level sets nonempty or empty.

    Runs a Polyak-step minimization of the merit function with target zero;
    if the merit drops to ``tol`` the instance is Feasible with the iterate
    as witness. Otherwise the minimum estimate is refined (the merit is
    bounded below by zero, so the refinement brackets are certified) and the
    instance is classified Infeasible when the refined value clears
    ``10 tol``, Undetermined in between or when the refinement could not
    close its bracket.
    """
    if cfg is None:
        cfg = SolverConfig()
    start = default_start(cs) if x0 is None else np.asarray(x0, dtype=np.float64)
    if start.shape[0] != cs.dimension:
        raise DimensionMismatch(f"x0 has dimension {start.shape[0]}, constraints have {cs.dimension}")

    g_tilde = build_g_tilde(cs)
    first = minimize(g_tilde, start, replace(cfg, step_rule=PolyakWithTarget(0.0)))
    best: MinimizeResult = first
    iters = first.iters
    refined_ok = True

    if first.f_best > cfg.tol:
        ref = refine_minimum(g_tilde, first.x_best, lower_bound=0.0, value_gap=cfg.tol)
        iters += ref.iters
        refined_ok = ref.converged
        if ref.f_best < best.f_best:
            best = ref

    x_best = best.x_best
    f_best = best.f_best
    residuals = [float(g.eval(x_best)[0]) for g in cs.constraints]

    if f_best <= cfg.tol:
        verdict = FeasibilityVerdict.FEASIBLE
        witness = x_best
    elif f_best > 10.0 * cfg.tol and refined_ok:
        verdict = FeasibilityVerdict.INFEASIBLE
        witness = None
    else:
        verdict = FeasibilityVerdict.UNDETERMINED
        witness = None

    return FeasibilityReport(verdict=verdict, witness=witness, residuals=residuals,
                             g_tilde_min=float(f_best), iters=iters)
