"""
Simulation Data Generator

Benchmark data: Toeplitz-correlated Gaussian covariates (Cov(x_i, x_j) =
rho^|i-j|), sparse coefficients drawn from U(-1, 1) at random positions and
Bernoulli responses with logistic success probabilities.
"""

import logging

import numpy as np
from scipy.signal import lfilter
from scipy.special import expit

from .errors import ConfigError
from .models import Dataset, SeedLike, SimulatedInstance, SimulationScenario
from .validators import InputValidator

logger = logging.getLogger(__name__)

ETA_SATURATION = 35.0

GRID_SAMPLE_SIZES = (100, 500)
GRID_DIMENSIONS = (100, 500, 1000)
GRID_INFORMATIVE = (5, 20)
GRID_RHO = 0.9


def gen_toeplitz_gaussian(n: int, p: int, rho: float, seed: SeedLike) -> np.ndarray:
    """
    Draw n rows from N(0, Sigma) with Sigma_ij = rho^|i-j|.

    Each row follows the AR(1) recursion x_1 = e_1,
    x_j = rho * x_{j-1} + sqrt(1 - rho^2) * e_j, which has exactly this
    covariance without factorising Sigma.
    """
    if not (0 <= rho < 1):
        raise ConfigError(f"rho must be in [0, 1), got: {rho}")
    rng = np.random.default_rng(seed)
    innovations = rng.standard_normal((n, p))
    scale = np.sqrt(1.0 - rho**2)
    # lfilter computes x_j = scale * e_j + rho * x_{j-1}; undo the scale on the first column
    innovations[:, 0] /= scale
    return np.asfortranarray(lfilter([scale], [1.0, -rho], innovations, axis=1))


def gen_coefficients(p: int, p_inf: int, seed: SeedLike) -> tuple[np.ndarray, tuple[int, ...]]:
    """Sparse coefficient vector with p_inf non-zero U(-1, 1) entries at uniformly drawn positions."""
    if not (0 <= p_inf <= p):
        raise ConfigError(f"p_inf must be in [0, {p}], got: {p_inf}")
    rng = np.random.default_rng(seed)
    informative = np.sort(rng.choice(p, size=p_inf, replace=False))
    values = rng.uniform(-1.0, 1.0, size=p_inf)
    # exact zeros would break beta[j] != 0 <=> j informative
    while (values == 0.0).any():
        zeros = values == 0.0
        values[zeros] = rng.uniform(-1.0, 1.0, size=int(zeros.sum()))
    beta = np.zeros(p)
    beta[informative] = values
    return beta, tuple(int(j) for j in informative)


def gen_response_binary(x: np.ndarray, beta: np.ndarray, seed: SeedLike) -> np.ndarray:
    """y_i ~ Bernoulli(sigma(eta_i)) with eta = x @ beta saturated at +-35."""
    x = np.asarray(x, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if x.shape[1] != beta.shape[0]:
        raise ConfigError(f"x has {x.shape[1]} columns but beta has length {beta.shape[0]}")
    rng = np.random.default_rng(seed)
    eta = np.clip(x @ beta, -ETA_SATURATION, ETA_SATURATION)
    return (rng.random(x.shape[0]) < expit(eta)).astype(float)


def gen_response_gaussian(x: np.ndarray, beta: np.ndarray, seed: SeedLike, sigma: float = 1.0) -> np.ndarray:
    """Continuous response eta + N(0, sigma^2); a SquaredError demo utility, not used by the benchmark."""
    x = np.asarray(x, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if x.shape[1] != beta.shape[0]:
        raise ConfigError(f"x has {x.shape[1]} columns but beta has length {beta.shape[0]}")
    rng = np.random.default_rng(seed)
    return x @ beta + sigma * rng.standard_normal(x.shape[0])


def scenario_grid(replications: int = 100, seed: int = 0) -> list[SimulationScenario]:
    """The 12-cell benchmark grid: n x p x p_inf with rho = 0.9."""
    return [
        SimulationScenario(n=n, p=p, p_inf=p_inf, rho=GRID_RHO, replications=replications, seed=seed)
        for n in GRID_SAMPLE_SIZES
        for p in GRID_DIMENSIONS
        for p_inf in GRID_INFORMATIVE
    ]


class SimulationGenerator:
    """Builds one SimulatedInstance per (scenario, replicate)."""

    RESPONSES = ("binary", "gaussian")

    def __init__(self):
        self.validator = InputValidator()

    def generate(self, scenario: SimulationScenario, replicate: int, response: str = "binary") -> SimulatedInstance:
        """
        Generate a replicate of a scenario.

        The covariate, coefficient and response streams are spawned from the
        entropy (scenario.seed, replicate), so replicates are independent and
        reproducible one at a time.
        """
        self.validator.validate_scenario(scenario)
        if response not in self.RESPONSES:
            raise ConfigError(f"Invalid response: {response}. Must be one of {self.RESPONSES}")

        x_seed, beta_seed, y_seed = np.random.SeedSequence([scenario.seed, replicate]).spawn(3)
        x = gen_toeplitz_gaussian(scenario.n, scenario.p, scenario.rho, x_seed)
        beta, informative = gen_coefficients(scenario.p, scenario.p_inf, beta_seed)
        if response == "binary":
            y = gen_response_binary(x, beta, y_seed)
        else:
            y = gen_response_gaussian(x, beta, y_seed)

        logger.debug(f"Generated {scenario.scenario_id} replicate {replicate} ({response} response)")
        return SimulatedInstance(
            data=Dataset.from_arrays(x, y),
            beta=beta,
            informative_set=informative,
            eta=x @ beta,
        )
