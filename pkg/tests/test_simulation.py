"""
Tests for the benchmark data generator.
"""

import numpy as np
import pytest
from scipy.linalg import cholesky, toeplitz
from scipy.special import expit
from scipy.stats import ks_2samp

from engine.errors import ConfigError
from engine.models import SimulationScenario
from engine.simulation import (
    SimulationGenerator,
    gen_coefficients,
    gen_response_binary,
    gen_response_gaussian,
    gen_toeplitz_gaussian,
    scenario_grid,
)


def dense_toeplitz_sample(n, p, rho, seed):
    """Reference sampler: Cholesky factor of the full correlation matrix."""
    upper = cholesky(toeplitz(rho ** np.arange(p)))
    return np.random.default_rng(seed).standard_normal((n, p)) @ upper


class TestToeplitzGaussian:
    def test_recursion_reproduces_toeplitz_covariance(self):
        """x = L e with the AR(1) loadings has covariance rho^|i-j| exactly."""
        for rho in (0.0, 0.5, 0.9):
            for p in range(1, 13):
                scale = np.sqrt(1 - rho**2)
                loadings = np.zeros((p, p))
                for j in range(p):
                    loadings[j, 0] = rho**j
                    for k in range(1, j + 1):
                        loadings[j, k] = scale * rho ** (j - k)
                np.testing.assert_allclose(loadings @ loadings.T, toeplitz(rho ** np.arange(p)), atol=1e-12)

    def test_sample_covariance(self):
        x = gen_toeplitz_gaussian(20_000, 10, 0.9, seed=1)
        np.testing.assert_allclose(np.cov(x, rowvar=False), toeplitz(0.9 ** np.arange(10)), atol=0.03)
        assert np.cov(x[:, 0], x[:, 2])[0, 1] == pytest.approx(0.81, abs=0.03)

    def test_marginals_match_dense_oracle(self):
        x = gen_toeplitz_gaussian(20_000, 10, 0.9, seed=2)
        reference = dense_toeplitz_sample(20_000, 10, 0.9, seed=3)
        p_values = [ks_2samp(x[:, j], reference[:, j]).pvalue for j in range(10)]
        # family-wise alpha of 0.01 over the ten marginals
        assert min(p_values) > 0.01 / 10

    def test_independent_columns_at_zero_rho(self):
        x = gen_toeplitz_gaussian(10_000, 5, 0.0, seed=4)
        correlations = np.corrcoef(x, rowvar=False)
        off_diagonal = correlations[~np.eye(5, dtype=bool)]
        assert np.all(np.abs(off_diagonal) < 0.05)

    def test_single_column(self):
        x = gen_toeplitz_gaussian(10_000, 1, 0.9, seed=5)
        assert x.shape == (10_000, 1)
        assert x[:, 0].var(ddof=1) == pytest.approx(1.0, abs=0.05)

    @pytest.mark.parametrize("rho", [-0.1, 1.0, 1.5])
    def test_rho_out_of_range(self, rho):
        with pytest.raises(ConfigError, match="rho"):
            gen_toeplitz_gaussian(10, 3, rho, seed=0)

    def test_seed_determinism(self):
        np.testing.assert_array_equal(gen_toeplitz_gaussian(50, 4, 0.9, 7), gen_toeplitz_gaussian(50, 4, 0.9, 7))


class TestCoefficients:
    def test_no_informative_variables(self):
        beta, informative = gen_coefficients(8, 0, seed=0)
        np.testing.assert_array_equal(beta, np.zeros(8))
        assert informative == ()

    def test_all_informative(self):
        beta, informative = gen_coefficients(6, 6, seed=1)
        assert np.all(beta != 0)
        assert informative == tuple(range(6))

    def test_support_matches_informative_set(self):
        beta, informative = gen_coefficients(100, 20, seed=2)
        assert tuple(np.flatnonzero(beta)) == informative
        assert np.all(np.abs(beta[list(informative)]) < 1)

    def test_positions_uniform(self):
        counts = np.zeros(10)
        for seed in range(20_000):
            _, informative = gen_coefficients(10, 2, seed)
            counts[list(informative)] += 1
        np.testing.assert_allclose(counts / 20_000, 0.2, atol=0.01)

    def test_too_many_informative(self):
        with pytest.raises(ConfigError):
            gen_coefficients(5, 6, seed=0)


class TestResponses:
    def test_null_coefficients_give_fair_coin(self):
        x = gen_toeplitz_gaussian(10_000, 5, 0.9, seed=0)
        y = gen_response_binary(x, np.zeros(5), seed=1)
        assert set(np.unique(y)) <= {0.0, 1.0}
        assert y.mean() == pytest.approx(0.5, abs=0.015)

    def test_saturated_predictor(self):
        x = np.array([[1e6], [-1e6]])
        y = gen_response_binary(x, np.array([1.0]), seed=0)
        np.testing.assert_array_equal(y, [1.0, 0.0])
        assert expit(35.0) == pytest.approx(1.0, abs=1e-15)

    def test_calibration(self):
        x = gen_toeplitz_gaussian(10_000, 4, 0.5, seed=2)
        beta = np.array([1.2, 0.0, -0.8, 0.4])
        eta = x @ beta
        y = gen_response_binary(x, beta, seed=3)

        order = np.argsort(eta)
        for chunk in np.array_split(order, 10):
            assert y[chunk].mean() == pytest.approx(expit(eta[chunk]).mean(), abs=0.03)

    def test_gaussian_response(self):
        x = gen_toeplitz_gaussian(5_000, 3, 0.0, seed=4)
        beta = np.array([1.0, 0.0, -1.0])
        y = gen_response_gaussian(x, beta, seed=5)
        assert (y - x @ beta).std() == pytest.approx(1.0, abs=0.05)

    def test_dimension_mismatch(self):
        with pytest.raises(ConfigError):
            gen_response_binary(np.zeros((3, 2)), np.zeros(3), seed=0)


class TestSimulationGenerator:
    @pytest.fixture
    def scenario(self):
        return SimulationScenario(n=100, p=30, p_inf=5, rho=0.9, replications=3, seed=11)

    def test_instance_invariants(self, scenario):
        instance = SimulationGenerator().generate(scenario, replicate=0)

        assert instance.data.x.shape == (100, 30)
        assert len(instance.informative_set) == 5
        assert tuple(np.flatnonzero(instance.beta)) == instance.informative_set
        np.testing.assert_array_equal(instance.eta, instance.data.x @ instance.beta)
        assert not instance.data.has_shadows

    def test_replicates_reproducible_and_distinct(self, scenario):
        generator = SimulationGenerator()
        first = generator.generate(scenario, 1)
        again = generator.generate(scenario, 1)
        other = generator.generate(scenario, 2)

        np.testing.assert_array_equal(first.data.x, again.data.x)
        np.testing.assert_array_equal(first.data.y, again.data.y)
        assert not np.array_equal(first.data.x, other.data.x)

    def test_unknown_response_kind(self, scenario):
        with pytest.raises(ConfigError, match="response"):
            SimulationGenerator().generate(scenario, 0, response="poisson")

    def test_invalid_scenario(self):
        with pytest.raises(ConfigError, match="p_inf"):
            SimulationGenerator().generate(SimulationScenario(n=10, p=3, p_inf=4), 0)

    def test_scenario_grid(self):
        scenarios = scenario_grid(replications=100, seed=0)
        assert len(scenarios) == 12
        assert len({s.scenario_id for s in scenarios}) == 12
        assert all(s.rho == 0.9 for s in scenarios)
        assert {(s.n, s.p, s.p_inf) for s in scenarios} == {
            (n, p, k) for n in (100, 500) for p in (100, 500, 1000) for k in (5, 20)
        }
