"""
Tests for loss functions: offsets, negative gradients and empirical risk.
"""

import math

import numpy as np
import pytest

from engine.boosting import empirical_risk, init_offset, negative_gradient
from engine.errors import DegenerateResponseError
from engine.models import LossKind


class TestInitOffset:
    def test_squared_error_offset_is_mean(self):
        assert init_offset(np.array([1.0, 2.0, 3.0]), LossKind.SQUARED_ERROR) == pytest.approx(2.0)

    def test_logistic_offset_balanced(self):
        assert init_offset(np.array([0.0, 1.0]), LossKind.LOGISTIC) == pytest.approx(0.0)

    def test_logistic_offset_is_log_odds(self):
        """ybar = 0.75 gives log(3)."""
        assert init_offset(np.array([0.0, 1.0, 1.0, 1.0]), LossKind.LOGISTIC) == pytest.approx(math.log(3))

    def test_logistic_offset_minimises_constant_risk(self):
        y = np.array([0.0, 1.0, 1.0, 1.0])
        c = init_offset(y, LossKind.LOGISTIC)
        grid = np.linspace(c - 0.5, c + 0.5, 1001)
        risks = [empirical_risk(LossKind.LOGISTIC, y, np.full(4, g)) for g in grid]
        assert grid[int(np.argmin(risks))] == pytest.approx(c, abs=1e-3)

    @pytest.mark.parametrize("y", [[0.0, 0.0, 0.0], [1.0, 1.0]])
    def test_single_class_logistic_is_degenerate(self, y):
        with pytest.raises(DegenerateResponseError):
            init_offset(np.array(y), LossKind.LOGISTIC)

    def test_empty_response_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            init_offset(np.array([]), LossKind.SQUARED_ERROR)


class TestNegativeGradient:
    def test_squared_error_is_residual(self):
        u = negative_gradient(LossKind.SQUARED_ERROR, np.array([1.0, 0.0]), np.array([0.0, 0.0]))
        np.testing.assert_array_equal(u, [1.0, 0.0])

    def test_logistic_at_zero(self):
        u = negative_gradient(LossKind.LOGISTIC, np.array([1.0, 0.0]), np.array([0.0, 0.0]))
        np.testing.assert_allclose(u, [0.5, -0.5])

    def test_logistic_large_margin(self):
        """1 - sigma(10) = 1 / (1 + e^10)."""
        u = negative_gradient(LossKind.LOGISTIC, np.array([1.0]), np.array([10.0]))
        assert u[0] == pytest.approx(4.5397868702434395e-05, rel=1e-12)

    def test_logistic_extreme_margin_stays_finite(self):
        u = negative_gradient(LossKind.LOGISTIC, np.array([0.0, 1.0]), np.array([800.0, -800.0]))
        np.testing.assert_allclose(u, [-1.0, 1.0])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="same shape"):
            negative_gradient(LossKind.SQUARED_ERROR, np.zeros(3), np.zeros(2))


class TestEmpiricalRisk:
    def test_squared_error_perfect_fit(self):
        y = np.array([0.3, -1.2, 4.0])
        assert empirical_risk(LossKind.SQUARED_ERROR, y, y.copy()) == 0.0

    def test_logistic_symmetric(self):
        risk = empirical_risk(LossKind.LOGISTIC, np.array([0.0, 1.0]), np.array([0.0, 0.0]))
        assert risk == pytest.approx(math.log(2))

    def test_logistic_matches_exact_summation(self):
        rng = np.random.default_rng(3)
        y = rng.integers(0, 2, size=200).astype(float)
        f = rng.normal(scale=3.0, size=200)
        exact = math.fsum(math.log1p(math.exp(fi)) - yi * fi for yi, fi in zip(y, f, strict=True)) / len(y)
        assert empirical_risk(LossKind.LOGISTIC, y, f) == pytest.approx(exact, rel=1e-12)

    def test_logistic_no_overflow(self):
        risk = empirical_risk(LossKind.LOGISTIC, np.array([0.0]), np.array([1000.0]))
        assert risk == pytest.approx(1000.0)


class TestGradientCheck:
    """negative_gradient equals minus the derivative of the summed loss."""

    @pytest.mark.parametrize("loss", list(LossKind))
    def test_matches_central_differences(self, loss):
        rng = np.random.default_rng(11)
        h = 1e-5
        for _ in range(100):
            n = int(rng.integers(1, 6))
            y = rng.integers(0, 2, size=n).astype(float) if loss is LossKind.LOGISTIC else rng.normal(size=n)
            f = rng.normal(size=n)
            u = negative_gradient(loss, y, f)

            for i in range(n):
                up, down = f.copy(), f.copy()
                up[i] += h
                down[i] -= h
                # empirical_risk is a mean; scale back to the per-observation sum
                derivative = n * (empirical_risk(loss, y, up) - empirical_risk(loss, y, down)) / (2 * h)
                assert -derivative == pytest.approx(u[i], rel=1e-6, abs=1e-9)
