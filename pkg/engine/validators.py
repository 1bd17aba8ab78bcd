"""
Input Validation for the Selection Engine

Validates datasets and hyperparameters before any fitting begins.
Raises ConfigError / DataError with clear messages for any constraint violation.
"""

import numpy as np

from .errors import ConfigError, DataError, DegenerateResponseError
from .models import BoostConfig, CvConfig, Dataset, LossKind, SimulationScenario, StabilityConfig


class InputValidator:
    """Validates datasets and configs according to the engine's invariants."""

    def validate(self, data: Dataset, config: BoostConfig) -> None:
        """
        Run all checks needed before a boosting fit. Raises on the first failure.
        """
        self.validate_boost_config(config)
        self.validate_dataset(data)
        self.validate_response(data.y, config.loss)

    def validate_dataset(self, data: Dataset) -> None:
        """Validate shapes, finiteness and column metadata."""
        if data.x.ndim != 2:
            raise DataError(f"x must be a 2-d matrix, got shape: {data.x.shape}")

        n, p = data.x.shape
        if n < 2:
            raise DataError(f"dataset needs at least 2 rows, got: {n}")
        if p < 1:
            raise DataError("dataset needs at least 1 column")

        if data.y.shape != (n,):
            raise DataError(f"y must have length {n}, got shape: {data.y.shape}")
        if len(data.column_names) != p:
            raise DataError(f"column_names must have length {p}, got: {len(data.column_names)}")
        if data.shadow_mask.shape != (p,):
            raise DataError(f"shadow_mask must have length {p}, got shape: {data.shadow_mask.shape}")

        if not np.isfinite(data.x).all():
            rows, cols = np.nonzero(~np.isfinite(data.x))
            raise DataError(f"x contains a non-finite value at row {rows[0]}, column '{data.column_names[cols[0]]}'")
        if not np.isfinite(data.y).all():
            raise DataError(f"y contains a non-finite value at row {int(np.argmin(np.isfinite(data.y)))}")

    def validate_response(self, y: np.ndarray, loss: LossKind) -> None:
        """Check the response encoding required by the loss."""
        if y.size == 0:
            raise DataError("response must not be empty")

        if loss == LossKind.LOGISTIC:
            if not np.isin(y, (0.0, 1.0)).all():
                raise DataError("logistic loss requires a response coded as 0/1")
            mean = y.mean()
            if mean <= 0.0 or mean >= 1.0:
                raise DegenerateResponseError(
                    f"logistic response must contain both classes, got mean: {mean}"
                )

    def validate_unaugmented(self, data: Dataset) -> None:
        if data.has_shadows:
            raise DataError("dataset already contains shadow columns")

    def validate_boost_config(self, config: BoostConfig) -> None:
        """Validate step length, iteration budget and loss."""
        if not (0 < config.nu <= 1):
            raise ConfigError(f"nu must be in (0, 1], got: {config.nu}")
        if config.m_stop < 1:
            raise ConfigError(f"m_stop must be at least 1, got: {config.m_stop}")
        if config.loss not in (LossKind.SQUARED_ERROR, LossKind.LOGISTIC):
            raise ConfigError(f"Invalid loss: {config.loss}. Must be 'squared_error' or 'logistic'")

    def validate_stability_config(self, config: StabilityConfig) -> None:
        """Validate a completed stability configuration."""
        if config.b_subsamples < 2:
            raise ConfigError(f"b_subsamples must be at least 2, got: {config.b_subsamples}")
        if config.m_stop_cap < 1:
            raise ConfigError(f"m_stop_cap must be at least 1, got: {config.m_stop_cap}")
        if not config.is_complete:
            raise ConfigError("stability config must be completed (q, pi_thr and pfer) before selection")
        if config.q < 1:
            raise ConfigError(f"q must be at least 1, got: {config.q}")
        if not (0.5 < config.pi_thr <= 1):
            raise ConfigError(f"pi_thr must be in (0.5, 1], got: {config.pi_thr}")
        if config.pfer <= 0:
            raise ConfigError(f"pfer must be positive, got: {config.pfer}")

    def validate_cv_config(self, config: CvConfig) -> None:
        if config.folds < 2:
            raise ConfigError(f"folds must be at least 2, got: {config.folds}")
        if config.m_max < 1:
            raise ConfigError(f"m_max must be at least 1, got: {config.m_max}")

    def validate_scenario(self, scenario: SimulationScenario) -> None:
        """Validate one benchmark grid cell."""
        if scenario.n < 2:
            raise ConfigError(f"n must be at least 2, got: {scenario.n}")
        if scenario.p < 1:
            raise ConfigError(f"p must be at least 1, got: {scenario.p}")
        if not (0 <= scenario.p_inf <= scenario.p):
            raise ConfigError(f"p_inf must be in [0, p={scenario.p}], got: {scenario.p_inf}")
        if not (0 <= scenario.rho < 1):
            raise ConfigError(f"rho must be in [0, 1), got: {scenario.rho}")
        if scenario.replications < 1:
            raise ConfigError(f"replications must be at least 1, got: {scenario.replications}")
