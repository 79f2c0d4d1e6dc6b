import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smoothmax import (
    DomainConstants,
    SmoothingParams,
    condition_number,
    hessian_eig_bounds,
    sandwich_bounds,
    smooth_eval,
    smooth_gradient,
    smooth_hessian,
    smooth_value,
    softmax_weights,
)
from smoothmax.errors import (
    ContractViolationError,
    DimensionMismatchError,
    EvaluationError,
    UnsupportedCapabilityError,
)
from smoothmax.families import ComponentFamily
from smoothmax.testkit import (
    RandomQuadraticFamily,
    finite_diff_gradient,
    finite_diff_jacobian,
)


class ConstantFamily(ComponentFamily):
    """f_i(x) = levels[i], gradient 0; handy for value-only checks."""

    def __init__(self, levels, dim=1):
        self.levels = np.asarray(levels, dtype=float)
        self.n = self.levels.size
        self.dim = dim

    def value_at(self, i, x):
        return float(self.levels[i])

    def gradient_at(self, i, x):
        return np.zeros(self.dim)


def single_quadratic():
    return RandomQuadraticFamily(np.zeros((1, 1)), np.array([1.0]))


class TestSmoothValue:
    def test_single_component_is_identity(self):
        fam = single_quadratic()
        assert smooth_value(fam, SmoothingParams(7.0), np.array([3.0])) == pytest.approx(9.0)

    def test_two_equal_components_hit_upper_bound(self):
        fam = ConstantFamily([0.0, 0.0])
        value = smooth_value(fam, SmoothingParams(1.0), np.zeros(1))
        assert value == pytest.approx(math.log(2.0), abs=1e-12)

    def test_shifted_evaluation_survives_large_spread(self):
        fam = ConstantFamily([0.0, 1000.0])
        value = smooth_value(fam, SmoothingParams(1.0), np.zeros(1))
        assert value == pytest.approx(1000.0)
        assert math.isfinite(value)

    def test_dimension_mismatch_raises(self):
        fam = single_quadratic()
        with pytest.raises(DimensionMismatchError):
            smooth_value(fam, SmoothingParams(1.0), np.zeros(2))

    def test_non_finite_component_identifies_index(self):
        fam = ConstantFamily([1.0, math.inf, 2.0])
        with pytest.raises(EvaluationError) as err:
            smooth_value(fam, SmoothingParams(1.0), np.zeros(1))
        assert err.value.index == 1


class TestSoftmaxWeights:
    def test_equal_values_are_uniform(self):
        fam = ConstantFamily([4.2, 4.2])
        np.testing.assert_allclose(
            softmax_weights(fam, SmoothingParams(3.0), np.zeros(1)), [0.5, 0.5]
        )

    def test_log3_split(self):
        fam = ConstantFamily([0.0, math.log(3.0)])
        np.testing.assert_allclose(
            softmax_weights(fam, SmoothingParams(1.0), np.zeros(1)),
            [0.25, 0.75],
            atol=1e-12,
        )

    def test_dominant_component_underflow_ok(self):
        fam = ConstantFamily([0.0, -1e6, -1e6])
        weights = softmax_weights(fam, SmoothingParams(10.0), np.zeros(1))
        assert np.all(np.isfinite(weights))
        assert np.all(weights >= 0)
        assert weights[0] == pytest.approx(1.0)
        assert np.sum(weights) == pytest.approx(1.0, abs=1e-12)


class TestSmoothGradient:
    def test_single_component(self):
        fam = RandomQuadraticFamily(np.zeros((1, 2)), np.array([1.0]))
        grad = smooth_gradient(fam, SmoothingParams(1.0), np.array([1.0, 2.0]))
        np.testing.assert_allclose(grad, [2.0, 4.0])

    def test_symmetric_pair_cancels(self):
        fam = RandomQuadraticFamily(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]))
        grad = smooth_gradient(fam, SmoothingParams(2.0), np.zeros(1))
        np.testing.assert_allclose(grad, [0.0], atol=1e-14)

    def test_matches_finite_differences(self):
        fam = RandomQuadraticFamily.from_seed(11, n=3, dim=4)
        params = SmoothingParams(5.0)
        x = np.random.default_rng(5).standard_normal(4)
        grad = smooth_gradient(fam, params, x)
        fd = finite_diff_gradient(lambda p: smooth_value(fam, params, p), x)
        assert np.linalg.norm(grad - fd) <= 1e-6 * max(np.linalg.norm(fd), 1.0)


class TestSmoothHessian:
    def test_single_component_is_plain_hessian(self):
        fam = RandomQuadraticFamily(np.zeros((1, 3)), np.array([1.5]))
        hess = smooth_hessian(fam, SmoothingParams(4.0), np.ones(3))
        np.testing.assert_allclose(hess, 3.0 * np.eye(3), atol=1e-12)

    def test_hand_computed_two_component_case(self):
        # weights (1/2, 1/2), gradients -2 and +2, variance 4 -> 2 + 1*4 = 6
        fam = RandomQuadraticFamily(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]))
        hess = smooth_hessian(fam, SmoothingParams(1.0), np.zeros(1))
        np.testing.assert_allclose(hess, [[6.0]], atol=1e-12)

    def test_matches_finite_differences_of_gradient(self):
        fam = RandomQuadraticFamily.from_seed(3, n=3, dim=3)
        params = SmoothingParams(2.0)
        x = np.random.default_rng(8).standard_normal(3)
        hess = smooth_hessian(fam, params, x)
        fd = finite_diff_jacobian(lambda p: smooth_gradient(fam, params, p), x)
        assert np.linalg.norm(hess - fd) <= 1e-4 * np.linalg.norm(fd)
        np.testing.assert_allclose(hess, hess.T, atol=1e-10)

    def test_capability_check(self):
        fam = ConstantFamily([1.0, 2.0])
        with pytest.raises(UnsupportedCapabilityError):
            smooth_hessian(fam, SmoothingParams(1.0), np.zeros(1))


class TestBoundsAndConditioning:
    def test_sandwich_single_component(self):
        assert sandwich_bounds(5.0, SmoothingParams(3.0), 1) == (5.0, 5.0)

    def test_sandwich_log2(self):
        lo, hi = sandwich_bounds(0.0, SmoothingParams(1.0), 2)
        assert lo == 0.0
        assert hi == pytest.approx(math.log(2.0))

    def test_sandwich_matches_half_gap_smoother(self):
        s = 2.0 * math.log(4.0) / 0.1
        lo, hi = sandwich_bounds(3.0, SmoothingParams(s), 4)
        assert (lo, hi) == (3.0, pytest.approx(3.05))

    def test_eig_bounds_uniform_constants(self):
        constants = DomainConstants.uniform(5, 2.0, 2.0, 10.0)
        assert hessian_eig_bounds(constants, SmoothingParams(1.0)) == (2.0, 102.0)

    def test_eig_bounds_vanishing_smoother(self):
        constants = DomainConstants.uniform(3, 1.0, 1.0, 1.0)
        L, U = hessian_eig_bounds(constants, SmoothingParams(1e-9))
        assert L == 1.0
        assert U == pytest.approx(1.0 + 1e-9)

    def test_eig_bounds_mixed_constants(self):
        constants = DomainConstants(np.array([1.0, 3.0]), np.array([2.0, 5.0]), 2.0)
        assert hessian_eig_bounds(constants, SmoothingParams(3.0)) == (1.0, 17.0)

    @pytest.mark.parametrize("L,U,expected", [(2.0, 2.0, 1.0), (2.0, 102.0, 51.0), (1.0, 17.0, 17.0)])
    def test_condition_number(self, L, U, expected):
        assert condition_number(L, U) == pytest.approx(expected)

    def test_condition_number_contract(self):
        with pytest.raises(ContractViolationError):
            condition_number(0.0, 1.0)
        with pytest.raises(ContractViolationError):
            condition_number(2.0, 1.0)


class TestSmoothEvalBundle:
    def test_tie_breaks_to_lowest_index(self):
        fam = ConstantFamily([7.0, 7.0, 3.0])
        ev = smooth_eval(fam, SmoothingParams(1.0), np.zeros(1))
        assert ev.max_index == 0
        assert ev.max_value == 7.0

    def test_bundle_consistent_with_scalar_ops(self):
        fam = RandomQuadraticFamily.from_seed(2, n=4, dim=2)
        params = SmoothingParams(3.0)
        x = np.array([0.3, -0.7])
        ev = smooth_eval(fam, params, x)
        assert ev.value == smooth_value(fam, params, x)
        np.testing.assert_array_equal(ev.weights, softmax_weights(fam, params, x))
        np.testing.assert_array_equal(ev.gradient, smooth_gradient(fam, params, x))


# --- property tests ------------------------------------------------------

family_seeds = st.integers(min_value=0, max_value=10_000)


@settings(max_examples=100, deadline=None)
@given(seed=family_seeds, s=st.sampled_from([0.1, 1.0, 10.0, 100.0]))
def test_weights_normalize(seed, s):
    rng = np.random.default_rng(seed)
    fam = RandomQuadraticFamily.from_seed(seed, n=int(rng.integers(1, 17)), dim=int(rng.integers(1, 9)))
    x = rng.standard_normal(fam.dim)
    weights = softmax_weights(fam, SmoothingParams(s), x)
    assert np.sum(weights) == pytest.approx(1.0, abs=1e-12)
    assert np.all(weights >= 0.0) and np.all(weights <= 1.0)


@settings(max_examples=100, deadline=None)
@given(seed=family_seeds, s=st.sampled_from([0.1, 1.0, 10.0, 100.0]))
def test_sandwich_property(seed, s):
    rng = np.random.default_rng(seed)
    fam = RandomQuadraticFamily.from_seed(seed, n=int(rng.integers(1, 17)), dim=int(rng.integers(1, 9)))
    x = rng.standard_normal(fam.dim)
    value = smooth_value(fam, SmoothingParams(s), x)
    f_max = float(np.max(fam.values_at(x)))
    scale = max(abs(f_max), 1.0)
    assert value >= f_max - 1e-9 * scale
    assert value <= f_max + math.log(fam.n) / s + 1e-9 * scale


@settings(max_examples=50, deadline=None)
@given(seed=family_seeds)
def test_monotone_in_smoother(seed):
    rng = np.random.default_rng(seed)
    fam = RandomQuadraticFamily.from_seed(seed, n=int(rng.integers(2, 10)), dim=3)
    x = rng.standard_normal(3)
    values = [smooth_value(fam, SmoothingParams(s), x) for s in (0.1, 1.0, 10.0, 100.0)]
    for a, b in zip(values, values[1:]):
        assert b <= a + 1e-12


@settings(max_examples=50, deadline=None)
@given(seed=family_seeds)
def test_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    fam = RandomQuadraticFamily.from_seed(seed, n=6, dim=3)
    perm = rng.permutation(6)
    shuffled = RandomQuadraticFamily(fam.centers[perm], fam.curvatures[perm])
    x = rng.standard_normal(3)
    params = SmoothingParams(2.0)
    assert smooth_value(fam, params, x) == pytest.approx(
        smooth_value(shuffled, params, x), rel=1e-12, abs=1e-12
    )
    np.testing.assert_allclose(
        smooth_gradient(fam, params, x),
        smooth_gradient(shuffled, params, x),
        rtol=1e-12,
        atol=1e-12,
    )


@settings(max_examples=30, deadline=None)
@given(
    magnitude=st.sampled_from([1.0, 1e4, 1e8]),
    s=st.sampled_from([1.0, 1e3, 1e6]),
)
def test_stability_under_extreme_scales(magnitude, s):
    fam = ConstantFamily([magnitude, -magnitude, 0.5 * magnitude])
    params = SmoothingParams(s)
    assert math.isfinite(smooth_value(fam, params, np.zeros(1)))
    weights = softmax_weights(fam, params, np.zeros(1))
    assert np.all(np.isfinite(weights))
    assert np.sum(weights) == pytest.approx(1.0, abs=1e-12)


def test_parallel_reduction_mode_agrees(monkeypatch):
    fam = RandomQuadraticFamily.from_seed(13, n=9, dim=4)
    params = SmoothingParams(3.0)
    x = np.random.default_rng(2).standard_normal(4)
    sequential = smooth_value(fam, params, x)
    monkeypatch.setenv("SMOOTHMAX_THREADS", "4")
    parallel = smooth_value(fam, params, x)
    assert parallel == pytest.approx(sequential, rel=1e-12)


def test_hessian_eigenvalues_within_lemma_bounds():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        fam = RandomQuadraticFamily.from_seed(seed, n=5, dim=4)
        x = rng.standard_normal(4)
        params = SmoothingParams(3.0)
        constants = DomainConstants(
            2.0 * fam.curvatures, 2.0 * fam.curvatures, fam.pointwise_gradient_bound(x)
        )
        L, U = hessian_eig_bounds(constants, params)
        eigs = np.linalg.eigvalsh(smooth_hessian(fam, params, x))
        assert np.all(eigs >= L - 1e-6)
        assert np.all(eigs <= U + 1e-6)
