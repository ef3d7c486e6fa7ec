"""Shared fixtures and seeded instance generators for the test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from hullscope import Ball, BallIntersection, ConstraintSet, ball_constraint

settings.register_profile("suite", max_examples=200, deadline=None)
settings.load_profile("suite")

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture(scope="session")
def problems_dir() -> Path:
    return PROBLEMS_DIR


def problem_path(name: str) -> Path:
    return PROBLEMS_DIR / f"{name}.json"


def random_disk_instance(rng: np.random.Generator, m: int) -> list[Ball]:
    """Random 2-D disks with radii in [0.5, 1.5] and centers in [-2, 2]^2."""
    return [Ball(rng.uniform(-2.0, 2.0, 2), rng.uniform(0.5, 1.5)) for _ in range(m)]


def disks_to_constraints(disks: list[Ball]) -> ConstraintSet:
    return ConstraintSet([ball_constraint(b) for b in disks])


def disk_grid_bounds(disks: list[Ball], pad: float = 0.1) -> tuple[np.ndarray, np.ndarray]:
    lo = np.min([b.center - b.radius for b in disks], axis=0) - pad
    hi = np.max([b.center + b.radius for b in disks], axis=0) + pad
    return lo, hi


def random_ball_intersection(rng: np.random.Generator, m: int) -> tuple[BallIntersection, np.ndarray]:
    """A nonempty 2-D ball intersection; the returned anchor is a deep point.

    Centers sit within 0.5 R of the anchor, so the anchor is at least 0.5 R
    interior and pairwise center distances stay below R (healthy wedge
    angles between the boundary spheres).
    """
    R = rng.uniform(0.6, 1.2)
    z0 = rng.uniform(-1.0, 1.0, 2)
    centers = []
    for _ in range(m):
        d = rng.standard_normal(2)
        d /= np.linalg.norm(d)
        centers.append(z0 + (0.5 * R * rng.uniform(0.0, 1.0)) * d)
    return BallIntersection(centers, R), z0


def far_center(rng: np.random.Generator, bi: BallIntersection, z0: np.ndarray,
               margin_min: float = 0.12) -> np.ndarray:
    """A center whose distance to the intersection exceeds R by > margin_min.

    Placing c at ||c - z0|| = 2 R + max_offset + u guarantees
    d(c, C1) - R >= u since C1 is within max_offset + R of the anchor.
    """
    max_off = max(float(np.linalg.norm(c - z0)) for c in bi.centers)
    u = rng.uniform(margin_min + 0.03, 1.5)
    d = rng.standard_normal(2)
    d /= np.linalg.norm(d)
    return z0 + (2.0 * bi.radius + max_off + u) * d
