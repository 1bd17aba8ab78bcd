"""
Component-wise Gradient Boosting

Starts from the loss-minimal constant and, at every iteration, fits each
covariate's slope to the negative gradient, picks the best one and adds a
fraction nu of it to the predictor.
"""

import logging

import numpy as np

from ..errors import NoUsableCovariateError
from ..models import BoostConfig, Dataset, FitTrace, frozen_array
from ..validators import InputValidator
from .learners import best_learner, fit_all_base_learners
from .losses import get_loss
from .stopping import FixedIterations, SelectionStep, StopAction, StoppingRule

logger = logging.getLogger(__name__)


class ComponentwiseBooster:
    """Runs the boosting loop and records the full selection path."""

    def __init__(self):
        self.validator = InputValidator()

    def fit(
        self,
        data: Dataset,
        config: BoostConfig,
        stop: StoppingRule | None = None,
        iterations: int | None = None,
    ) -> FitTrace:
        """
        Fit the additive model.

        Args:
            data: Design matrix and response
            config: Step length, iteration budget, loss and centering flag
            stop: Rule consulted after each selection (defaults to FixedIterations)
            iterations: Override for config.m_stop; may be 0 for an offset-only model

        Returns:
            Immutable FitTrace of the performed iterations
        """
        self.validator.validate(data, config)
        stop = stop or FixedIterations()
        budget = config.m_stop if iterations is None else iterations
        if budget < 0:
            raise ValueError(f"iterations must be non-negative, got: {budget}")

        loss = get_loss(config.loss)
        x, column_means = self._prepare_design(data.x, config.center_covariates)
        sq_norms = np.einsum("ij,ij->j", x, x)
        if not (sq_norms > 0).any():
            raise NoUsableCovariateError("all columns are constant; no base learner can be fit")

        y = data.y
        offset = loss.offset(y)
        f = np.full(data.n, offset)
        coefficients = np.zeros(data.p)
        selection_path: list[int] = []
        step_sizes: list[float] = []
        risk_path = [loss.risk(y, f)]
        distinct: set[int] = set()
        stop_reason = "m_stop"

        for m in range(1, budget + 1):
            u = loss.negative_gradient(y, f)
            slopes, sse = fit_all_base_learners(x, u, sq_norms)
            j_star = best_learner(sse)

            action = stop.evaluate(SelectionStep(j_star, data.shadow_mask, m, frozenset(distinct)))
            if action is StopAction.STOP_BEFORE_UPDATE:
                stop_reason = stop.name
                break

            step = config.nu * slopes[j_star]
            coefficients[j_star] += step
            f += step * x[:, j_star]
            selection_path.append(j_star)
            step_sizes.append(float(step))
            risk_path.append(loss.risk(y, f))
            distinct.add(j_star)

            if action is StopAction.STOP_AFTER_UPDATE:
                stop_reason = stop.name
                break

        logger.debug(
            f"Boosting finished after {len(selection_path)} iterations ({stop_reason}), "
            f"{len(distinct)} distinct variables"
        )

        return FitTrace(
            offset=offset,
            column_means=frozen_array(column_means),
            coefficients=frozen_array(coefficients),
            selection_path=tuple(selection_path),
            risk_path=tuple(risk_path),
            iterations_performed=len(selection_path),
            step_sizes=tuple(step_sizes),
            loss=config.loss,
            stop_reason=stop_reason,
        )

    @staticmethod
    def _prepare_design(x: np.ndarray, center: bool) -> tuple[np.ndarray, np.ndarray]:
        """
        Center columns once up front and return the centering constants.

        Constant columns are set to exactly zero: mean() can leave a residue
        like 2.8e-17 that would otherwise pass as a tiny fittable column.
        """
        if not center:
            return np.asfortranarray(x), np.zeros(x.shape[1])
        column_means = x.mean(axis=0)
        centered = np.asfortranarray(x - column_means)
        constant = (x == x[0]).all(axis=0)
        centered[:, constant] = 0.0
        return centered, column_means


def boost_fit(data: Dataset, config: BoostConfig, stop: StoppingRule | None = None) -> FitTrace:
    """Functional entry point for a single boosting fit."""
    return ComponentwiseBooster().fit(data, config, stop)


def predict(trace: FitTrace, x_new: np.ndarray) -> np.ndarray:
    """Evaluate offset + sum_j coefficients[j] * (x_new[:, j] - column_means[j])."""
    x_new = np.asarray(x_new, dtype=float)
    if x_new.ndim == 1:
        x_new = x_new.reshape(1, -1)
    if x_new.shape[1] != trace.coefficients.shape[0]:
        raise ValueError(
            f"x_new has {x_new.shape[1]} columns, model was fit on {trace.coefficients.shape[0]}"
        )
    return trace.offset + (x_new - trace.column_means) @ trace.coefficients
