"""(1 + eps)-approximate minimal bounding sphere via the smoothed solver.

The objective is f(x) = max_i ||x - c_i||^2.  Every constant the generic
solver needs is derived analytically: component curvature is exactly 2,
the radius bracket at the centroid gives both the absolute gap and the
initial distance bound, and the gradient norm bound follows in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .agd import (
    IterateObserver,
    OptimizerConfig,
    ProgressCallback,
    SolveReport,
    run_to_gap,
)
from .errors import ContractViolationError
from .families import ComponentFamily, DomainConstants


@dataclass(frozen=True)
class PointCloud:
    """n points in R^d, one per row."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ContractViolationError(
                f"points must be a nonempty 2-D array, got shape {pts.shape}"
            )
        if not np.all(np.isfinite(pts)):
            raise ContractViolationError("all coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class MebConfig:
    """relative_epsilon is the approximation slack: radius <= (1+eps) R."""

    relative_epsilon: float

    def __post_init__(self):
        if not 0 < self.relative_epsilon <= 1:
            raise ContractViolationError(
                f"relative_epsilon must be in (0, 1], got {self.relative_epsilon}"
            )


@dataclass(frozen=True)
class MebResult:
    center: np.ndarray
    radius: float
    iterations: int
    planned_iterations: int
    epsilon_gap_used: float
    radius_lower: float
    radius_upper: float
    solve_report: SolveReport | None = None


class BoundingSphereFamily(ComponentFamily):
    """Component family f_i(x) = ||x - c_i||^2 with vectorized batch paths."""

    def __init__(self, cloud: PointCloud):
        self.cloud = cloud
        self.n = cloud.n
        self.dim = cloud.dim

    def value_at(self, i: int, x: np.ndarray) -> float:
        diff = np.asarray(x, dtype=float) - self.cloud.points[i]
        return float(diff @ diff)

    def gradient_at(self, i: int, x: np.ndarray) -> np.ndarray:
        return 2.0 * (np.asarray(x, dtype=float) - self.cloud.points[i])

    @property
    def has_hessian(self) -> bool:
        return True

    def hessian_at(self, i: int, x: np.ndarray) -> np.ndarray:
        return 2.0 * np.eye(self.dim)

    def values_at(self, x: np.ndarray) -> np.ndarray:
        diffs = self.cloud.points - x
        return np.einsum("ij,ij->i", diffs, diffs)

    def gradients_at(self, x: np.ndarray) -> np.ndarray:
        return 2.0 * (x - self.cloud.points)

    def combined_gradient(self, x: np.ndarray, weights: np.ndarray) -> np.ndarray:
        return 2.0 * (x - weights @ self.cloud.points)


def centroid_init(cloud: PointCloud) -> np.ndarray:
    """Arithmetic mean of the points; lies in their convex hull."""
    return cloud.points.mean(axis=0)


def farthest_sq_distance(cloud: PointCloud, x: np.ndarray) -> tuple[float, int]:
    """max_i ||x - c_i||^2 and the achieving index (lowest on ties)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (cloud.dim,):
        raise ContractViolationError(
            f"query point has shape {x.shape}, cloud dimension is {cloud.dim}"
        )
    diffs = cloud.points - x
    sq = np.einsum("ij,ij->i", diffs, diffs)
    idx = int(np.argmax(sq))
    return float(sq[idx]), idx


def radius_bounds(f_at_x1: float) -> tuple[float, float]:
    """Bracket on the optimal radius from one objective value in the hull:
    sqrt(f(x1))/2 <= R <= sqrt(f(x1))."""
    if f_at_x1 < 0:
        raise ContractViolationError("squared distance cannot be negative")
    root = math.sqrt(f_at_x1)
    return 0.5 * root, root


def meb_gradient_bound(f_at_x1: float, epsilon_gap: float) -> float:
    """Common gradient norm bound over all iterates: 6 sqrt(5 f(x1) + eps/2)."""
    if f_at_x1 < 0 or not epsilon_gap > 0:
        raise ContractViolationError("need f_at_x1 >= 0 and epsilon_gap > 0")
    return 6.0 * math.sqrt(5.0 * f_at_x1 + 0.5 * epsilon_gap)


def required_iterations_meb(relative_epsilon: float, n: int) -> int:
    """Closed-form sufficient iteration count for the (1+eps) guarantee:
    ceil(1 + log(1 + 4/eps) sqrt(1 + 18 (1 + 20/eps) log n))."""
    if not 0 < relative_epsilon <= 1 or n < 1:
        raise ContractViolationError("need 0 < relative_epsilon <= 1 and n >= 1")
    if n == 1:
        return 1
    eps = relative_epsilon
    value = 1.0 + math.log(1.0 + 4.0 / eps) * math.sqrt(
        1.0 + 18.0 * (1.0 + 20.0 / eps) * math.log(n)
    )
    return math.ceil(value)


def solve_meb(
    cloud: PointCloud,
    config: MebConfig,
    progress: ProgressCallback | None = None,
    iterate_observer: IterateObserver | None = None,
) -> MebResult:
    """Approximate minimal bounding sphere with radius <= (1+eps) R.

    The absolute gap fed to the generic solver uses the conservative lower
    end of the radius bracket, eps_abs = (2 eps + eps^2) f(x1) / 4, which can
    only strengthen the guarantee.  The iteration budget is the smaller of
    the specialized and the general closed-form counts.
    """
    eps_rel = config.relative_epsilon
    x1 = centroid_init(cloud)
    f1, _ = farthest_sq_distance(cloud, x1)

    if cloud.n == 1 or f1 == 0.0:
        # Single or fully coincident points: the centroid is the exact center.
        return MebResult(
            center=x1,
            radius=0.0,
            iterations=0,
            planned_iterations=0,
            epsilon_gap_used=0.0,
            radius_lower=0.0,
            radius_upper=0.0,
        )

    lower, upper = radius_bounds(f1)
    epsilon_gap = (2.0 * eps_rel + eps_rel ** 2) * lower ** 2
    g_bound = meb_gradient_bound(f1, epsilon_gap)
    constants = DomainConstants.uniform(cloud.n, 2.0, 2.0, g_bound)
    planned = required_iterations_meb(eps_rel, cloud.n)

    family = BoundingSphereFamily(cloud)
    report = run_to_gap(
        family,
        constants,
        OptimizerConfig(
            epsilon=epsilon_gap,
            x1=x1,
            initial_distance_bound=math.sqrt(f1),
            max_iterations_override=planned,
        ),
        progress=progress,
        iterate_observer=iterate_observer,
    )
    radius = math.sqrt(report.f_final)
    return MebResult(
        center=report.x_final,
        radius=radius,
        iterations=report.iterations_run,
        planned_iterations=planned,
        epsilon_gap_used=epsilon_gap,
        radius_lower=lower,
        radius_upper=upper,
        solve_report=report,
    )
