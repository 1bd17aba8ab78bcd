"""
Bootstrap Cross-Validation

Chooses the number of boosting iterations by out-of-bag risk: each replicate
fits m_max iterations on a bootstrap draw and scores the rows that were not
drawn at every iteration. The iteration with the lowest mean out-of-bag risk
(smallest m on ties) is refit on all rows.
"""

import logging

import numpy as np
from joblib import Parallel, delayed

from ..boosting import ComponentwiseBooster, FixedIterations, get_loss
from ..errors import DataError, ResamplingError
from ..models import BoostConfig, CvConfig, CvResult, Dataset, FitTrace, LossKind
from ..validators import InputValidator

logger = logging.getLogger(__name__)

MAX_REDRAWS = 100
MIN_ROWS = 10


def oob_risk_path(trace: FitTrace, x_oob: np.ndarray, y_oob: np.ndarray) -> np.ndarray:
    """Out-of-bag risk at every m in 0..iterations_performed, updating the predictor one step at a time."""
    loss = get_loss(trace.loss)
    f = np.full(y_oob.shape[0], trace.offset)
    risks = np.empty(trace.iterations_performed + 1)
    risks[0] = loss.risk(y_oob, f)
    centered = x_oob - trace.column_means
    for m, (j, step) in enumerate(zip(trace.selection_path, trace.step_sizes, strict=True), start=1):
        f += step * centered[:, j]
        risks[m] = loss.risk(y_oob, f)
    return risks


class BootstrapValidator:
    """Selects m_stop by bootstrap out-of-bag risk and refits on the full data."""

    def __init__(self, n_jobs: int = 1):
        self.n_jobs = n_jobs
        self.validator = InputValidator()
        self.booster = ComponentwiseBooster()

    def validate(self, data: Dataset, boost: BoostConfig, cv: CvConfig) -> CvResult:
        """
        Run bootstrap cross-validation.

        Args:
            data: Design matrix and response (raw or shadow-augmented)
            boost: Step length and loss (m_stop is replaced by cv.m_max)
            cv: Number of replicates, grid bound and seed
        """
        self.validator.validate(data, boost)
        self.validator.validate_cv_config(cv)
        if data.n < MIN_ROWS:
            raise DataError(f"bootstrap cross-validation needs at least {MIN_ROWS} rows, got: {data.n}")

        rows = Parallel(n_jobs=self.n_jobs)(
            delayed(self._replicate_risk)(data, boost, cv, k) for k in range(cv.folds)
        )
        risk_matrix = np.vstack(rows)
        mean_risk = risk_matrix.mean(axis=0)
        # argmin keeps the first (smallest) m on ties
        m_opt = int(np.argmin(mean_risk))

        final_trace = self.booster.fit(data, boost, FixedIterations(), iterations=m_opt)
        logger.info(
            f"Bootstrap CV ({cv.folds} replicates, m_max={cv.m_max}) chose m_opt={m_opt}, "
            f"{len(final_trace.selected)} variables selected"
        )
        return CvResult(risk_matrix=risk_matrix, mean_risk=mean_risk, m_opt=m_opt, final_trace=final_trace)

    def _replicate_risk(self, data: Dataset, boost: BoostConfig, cv: CvConfig, k: int) -> np.ndarray:
        in_bag, out_of_bag = self._draw_usable_replicate(data, boost.loss, cv.seed, k)
        trace = self.booster.fit(data.take_rows(in_bag), boost, FixedIterations(), iterations=cv.m_max)
        logger.debug(f"Bootstrap replicate {k}: {out_of_bag.size} out-of-bag rows")
        return oob_risk_path(trace, data.x[out_of_bag], data.y[out_of_bag])

    @staticmethod
    def _draw_usable_replicate(data: Dataset, loss: LossKind, seed: int, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Draw n rows with replacement; redraw when nothing is out of bag or the in-bag response is single-class."""
        n = data.n
        for attempt in range(MAX_REDRAWS):
            rng = np.random.default_rng([seed, k, attempt])
            in_bag = rng.integers(0, n, size=n)
            out_of_bag = np.setdiff1d(np.arange(n), in_bag)
            if out_of_bag.size == 0:
                logger.warning(f"Bootstrap replicate {k} attempt {attempt} has no out-of-bag rows; redrawing")
                continue
            if loss == LossKind.LOGISTIC and not 0.0 < data.y[in_bag].mean() < 1.0:
                logger.warning(f"Bootstrap replicate {k} attempt {attempt} has a single-class response; redrawing")
                continue
            return in_bag, out_of_bag
        raise ResamplingError(f"bootstrap replicate {k} stayed unusable after {MAX_REDRAWS} redraws")


def bootstrap_cv(data: Dataset, boost: BoostConfig, cv: CvConfig, n_jobs: int = 1) -> CvResult:
    """Functional entry point for bootstrap cross-validation."""
    return BootstrapValidator(n_jobs=n_jobs).validate(data, boost, cv)
