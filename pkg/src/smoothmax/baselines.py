"""Reference algorithms: exact MEB (randomized incremental with
move-to-front) and the farthest-point core-set baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, UnsupportedDimensionError
from .meb import MebResult, PointCloud, farthest_sq_distance, radius_bounds

WELZL_MAX_DIM = 12

# Relative slack when testing sphere membership during the incremental
# construction; guards against re-adding boundary points due to roundoff.
_CONTAINS_SLACK = 1e-10


@dataclass(frozen=True)
class ExactMebResult:
    center: np.ndarray
    radius: float
    support: tuple[int, ...]


def _circumball(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest sphere through all given points (their circumsphere within
    the affine hull).  Uses least squares so degenerate/affinely dependent
    boundary sets fall back to the subspace circumcenter."""
    base = points[0]
    if points.shape[0] == 1:
        return base.copy(), 0.0
    v = points[1:] - base  # k x d
    gram = v @ v.T
    rhs = 0.5 * np.einsum("ij,ij->i", v, v)
    coeffs, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    center = base + coeffs @ v
    diff = points - center
    r2 = float(np.max(np.einsum("ij,ij->i", diff, diff)))
    return center, r2


def _welzl_mtf(
    pts: np.ndarray, order: list[int], boundary: list[int]
) -> tuple[np.ndarray | None, float, list[int]]:
    if boundary:
        center, r2 = _circumball(pts[boundary])
    else:
        center, r2 = None, -1.0
    support = list(boundary)
    if len(boundary) == pts.shape[1] + 1:
        return center, r2, support
    i = 0
    while i < len(order):
        j = order[i]
        inside = False
        if center is not None:
            diff = pts[j] - center
            inside = float(diff @ diff) <= r2 * (1.0 + _CONTAINS_SLACK) + 1e-30
        if not inside:
            center, r2, support = _welzl_mtf(pts, order[:i], boundary + [j])
            order.pop(i)
            order.insert(0, j)
        i += 1
    return center, r2, support


def welzl_exact(cloud: PointCloud, seed: int = 0) -> ExactMebResult:
    """Exact minimal enclosing ball; deterministic given the seed.

    The seed only fixes the processing order; the optimum itself is unique.
    Dimensions above 12 are refused (recursion constant grows too fast);
    use the core-set baseline at a tiny epsilon as a reference instead.
    """
    if cloud.dim > WELZL_MAX_DIM:
        raise UnsupportedDimensionError(
            f"welzl_exact supports dim <= {WELZL_MAX_DIM}, got {cloud.dim}; "
            "use badoiu_clarkson at a small epsilon as a near-exact reference"
        )
    rng = np.random.default_rng(seed)
    order = list(rng.permutation(cloud.n))
    center, r2, support = _welzl_mtf(cloud.points, order, [])
    return ExactMebResult(
        center=center,
        radius=math.sqrt(max(r2, 0.0)),
        support=tuple(sorted(int(i) for i in support)),
    )


def badoiu_clarkson(cloud: PointCloud, relative_epsilon: float) -> MebResult:
    """Farthest-point core-set iteration with ceil(1/eps^2) steps.

    c_0 is the first input point; step k moves c toward the farthest point
    by a 1/(k+1) fraction, so every iterate stays in the convex hull.
    """
    if not 0 < relative_epsilon <= 1:
        raise ContractViolationError(
            f"relative_epsilon must be in (0, 1], got {relative_epsilon}"
        )
    center = cloud.points[0].copy()
    f0, _ = farthest_sq_distance(cloud, center)
    lower, upper = radius_bounds(f0)

    iterations = 0
    if cloud.n > 1:
        iterations = math.ceil(1.0 / relative_epsilon ** 2)
        for k in range(1, iterations + 1):
            _, idx = farthest_sq_distance(cloud, center)
            center = center + (cloud.points[idx] - center) / (k + 1)

    f_final, _ = farthest_sq_distance(cloud, center)
    eps = relative_epsilon
    return MebResult(
        center=center,
        radius=math.sqrt(f_final),
        iterations=iterations,
        planned_iterations=iterations,
        epsilon_gap_used=(2.0 * eps + eps ** 2) * lower ** 2,
        radius_lower=lower,
        radius_upper=upper,
    )
