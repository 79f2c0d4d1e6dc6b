"""Numerically stable LogSumExp smooth maximum and its derivatives.

All exponentials are taken after subtracting the running maximum of the
component values; exp(s * f_i(x)) is never formed directly.  This shifted
form is mathematically identical and stays finite for any finite inputs
and any s > 0.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError, ContractViolationError
from .families import ComponentFamily, DomainConstants, SmoothingParams


def reduction_threads() -> int:
    """Thread count for the opt-in parallel reduction mode.

    Default 1 keeps a fixed sequential reduction order (bit-reproducible).
    With more threads, results are reproducible only up to ~1e-12 relative.
    """
    raw = os.environ.get("SMOOTHMAX_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        return 1
    return max(count, 1)


def component_values(family: ComponentFamily, x: np.ndarray) -> np.ndarray:
    """All f_i(x) with precondition checks; raises on non-finite values."""
    x = family.check_point(x)
    threads = reduction_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = np.fromiter(
                pool.map(lambda i: family.value_at(i, x), range(family.n)),
                dtype=float,
                count=family.n,
            )
    else:
        values = np.asarray(family.values_at(x), dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.argmax(~np.isfinite(values)))
        raise EvaluationError(
            f"component {bad} evaluated to a non-finite value at x={x!r}", index=bad
        )
    return values


@dataclass(frozen=True)
class SmoothEval:
    """One smoothed evaluation: value, softmax weights, gradient, exact max."""

    value: float
    weights: np.ndarray
    gradient: np.ndarray
    max_index: int
    max_value: float


def _lse_from_values(values: np.ndarray, s: float) -> float:
    m = float(np.max(values))
    return m + math.log(float(np.sum(np.exp(s * (values - m))))) / s


def _weights_from_values(values: np.ndarray, s: float) -> np.ndarray:
    shifted = np.exp(s * (values - np.max(values)))
    return shifted / np.sum(shifted)


def smooth_value(family: ComponentFamily, params: SmoothingParams, x: np.ndarray) -> float:
    """f_s(x) = m + (1/s) log sum_i exp(s (f_i(x) - m)), m = max_i f_i(x)."""
    return _lse_from_values(component_values(family, x), params.s)


def softmax_weights(family: ComponentFamily, params: SmoothingParams, x: np.ndarray) -> np.ndarray:
    """Probability vector p_s(x); entries in (0, 1], sum 1 (underflow to 0 allowed)."""
    return _weights_from_values(component_values(family, x), params.s)


def smooth_gradient(family: ComponentFamily, params: SmoothingParams, x: np.ndarray) -> np.ndarray:
    """sum_i p_{s,i}(x) grad f_i(x), computed in one pass over the weights."""
    x = family.check_point(x)
    weights = softmax_weights(family, params, x)
    return family.combined_gradient(x, weights)


def smooth_eval(family: ComponentFamily, params: SmoothingParams, x: np.ndarray) -> SmoothEval:
    """Bundled value / weights / gradient evaluation sharing one values pass."""
    x = family.check_point(x)
    values = component_values(family, x)
    weights = _weights_from_values(values, params.s)
    return SmoothEval(
        value=_lse_from_values(values, params.s),
        weights=weights,
        gradient=family.combined_gradient(x, weights),
        max_index=int(np.argmax(values)),  # np.argmax breaks ties by lowest index
        max_value=float(np.max(values)),
    )


def smooth_hessian(family: ComponentFamily, params: SmoothingParams, x: np.ndarray) -> np.ndarray:
    """s * Cov_p(grad f_i) + E_p[hess f_i]; verification-grade path.

    Requires the family's Hessian capability.  The covariance is
    E_p[g g^T] - E_p[g] E_p[g]^T over the softmax weights.
    """
    x = family.check_point(x)
    values = component_values(family, x)
    weights = _weights_from_values(values, params.s)
    grads = family.gradients_at(x)
    mean_grad = weights @ grads
    second_moment = (grads * weights[:, None]).T @ grads
    cov = second_moment - np.outer(mean_grad, mean_grad)
    mean_hess = np.zeros((family.dim, family.dim))
    for i in range(family.n):
        mean_hess += weights[i] * family.hessian_at(i, x)
    hess = params.s * cov + mean_hess
    return 0.5 * (hess + hess.T)  # symmetrize away roundoff


def sandwich_bounds(max_value: float, params: SmoothingParams, n: int) -> tuple[float, float]:
    """(f(x), f(x) + log(n)/s): the bracket the smooth value always sits in."""
    if n < 1:
        raise ContractViolationError(f"need n >= 1, got {n}")
    return max_value, max_value + math.log(n) / params.s


def hessian_eig_bounds(constants: DomainConstants, params: SmoothingParams) -> tuple[float, float]:
    """Eigenvalue bracket of the smooth Hessian on the working set.

    L_s = min_i l_i and U_s = s G^2 + max_i u_i.
    """
    L_s = constants.min_strong_convexity
    U_s = params.s * constants.gradient_norm_bound ** 2 + constants.max_smoothness
    return L_s, U_s


def condition_number(L_s: float, U_s: float) -> float:
    """U_s / L_s, the condition number driving the accelerated rate."""
    if not (0 < L_s <= U_s):
        raise ContractViolationError(f"need 0 < L_s <= U_s, got L_s={L_s}, U_s={U_s}")
    return U_s / L_s
