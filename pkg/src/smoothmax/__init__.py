"""Smoothed min-max minimization and approximate minimal bounding spheres.

The max of finitely many strongly-convex smooth components is replaced by
its LogSumExp smooth substitute and minimized with accelerated gradient
descent; closed-form iteration counts certify the requested optimality
gap.  The bounding-sphere front end specializes every constant analytically
and is checked against an exact Welzl oracle and a core-set baseline.
"""

from .agd import (
    OptimizerConfig,
    OptimizerState,
    SolveReport,
    agd_step,
    gap_bound,
    initial_state,
    required_iterations_general,
    run_online,
    run_to_gap,
    smoother_for_gap,
)
from .baselines import ExactMebResult, badoiu_clarkson, welzl_exact
from .core import (
    SmoothEval,
    condition_number,
    hessian_eig_bounds,
    sandwich_bounds,
    smooth_eval,
    smooth_gradient,
    smooth_hessian,
    smooth_value,
    softmax_weights,
)
from .families import ComponentFamily, DomainConstants, SmoothingParams
from .meb import (
    BoundingSphereFamily,
    MebConfig,
    MebResult,
    PointCloud,
    centroid_init,
    farthest_sq_distance,
    meb_gradient_bound,
    radius_bounds,
    required_iterations_meb,
    solve_meb,
)

__all__ = [
    "ComponentFamily",
    "DomainConstants",
    "SmoothingParams",
    "SmoothEval",
    "smooth_value",
    "softmax_weights",
    "smooth_gradient",
    "smooth_hessian",
    "smooth_eval",
    "sandwich_bounds",
    "hessian_eig_bounds",
    "condition_number",
    "OptimizerConfig",
    "OptimizerState",
    "SolveReport",
    "initial_state",
    "smoother_for_gap",
    "agd_step",
    "gap_bound",
    "required_iterations_general",
    "run_to_gap",
    "run_online",
    "PointCloud",
    "MebConfig",
    "MebResult",
    "BoundingSphereFamily",
    "centroid_init",
    "farthest_sq_distance",
    "radius_bounds",
    "meb_gradient_bound",
    "required_iterations_meb",
    "solve_meb",
    "ExactMebResult",
    "welzl_exact",
    "badoiu_clarkson",
]
