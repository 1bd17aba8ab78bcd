"""
Stability Selection

Boosts on B random half-samples, each fit stopping once q distinct
variables have been selected, and keeps the variables whose selection
frequency reaches pi_thr. The three hyperparameters are tied by the
per-family error bound

    E(V) <= q^2 / ((2 * pi_thr - 1) * p)

so any two of (q, pi_thr, pfer) determine the third.
"""

import logging
import math
from dataclasses import replace

import numpy as np
from joblib import Parallel, delayed

from ..boosting import ComponentwiseBooster, DistinctSelectionStop
from ..errors import ConfigError, DataError, ResamplingError
from ..models import BoostConfig, Dataset, LossKind, StabilityConfig, StabilityResult
from ..validators import InputValidator

logger = logging.getLogger(__name__)

MAX_REDRAWS = 100
# Guards floor(sqrt(.)) against values like 19.999999999999996 for an exact square.
_FLOOR_TOLERANCE = 1e-9


def pfer_bound(q: int, pi_thr: float, p: int) -> float:
    """Expected false selections guaranteed by q and pi_thr on p variables."""
    return q**2 / ((2 * pi_thr - 1) * p)


def complete_config(
    p: int,
    q: int | None = None,
    pi_thr: float | None = None,
    pfer: float | None = None,
) -> tuple[int, float, float]:
    """
    Derive the missing one of (q, pi_thr, pfer) by assuming equality in the error bound.

    q is floored, which keeps the bound valid.

    Returns:
        (q, pi_thr, pfer)
    """
    provided = sum(value is not None for value in (q, pi_thr, pfer))
    if provided != 2:
        raise ConfigError(f"exactly two of q, pi_thr and pfer must be given, got {provided}")
    if p < 1:
        raise ConfigError(f"p must be at least 1, got: {p}")
    if pi_thr is not None and not (0.5 < pi_thr <= 1):
        raise ConfigError(f"pi_thr must be in (0.5, 1], got: {pi_thr}")
    if q is not None and q < 1:
        raise ConfigError(f"q must be at least 1, got: {q}")
    if pfer is not None and pfer <= 0:
        raise ConfigError(f"pfer must be positive, got: {pfer}")

    if q is None:
        q = math.floor(math.sqrt(pfer * (2 * pi_thr - 1) * p) + _FLOOR_TOLERANCE)
        if q < 1:
            raise ConfigError(f"derived q={q} is below 1 for pfer={pfer}, pi_thr={pi_thr}, p={p}")
    elif pi_thr is None:
        pi_thr = (q**2 / (pfer * p) + 1) / 2
        if not (0.5 < pi_thr <= 1):
            raise ConfigError(f"derived pi_thr={pi_thr:.4f} is outside (0.5, 1] for q={q}, pfer={pfer}, p={p}")
    else:
        pfer = pfer_bound(q, pi_thr, p)

    if q > p:
        raise ConfigError(f"q={q} exceeds the number of variables p={p}")
    return int(q), float(pi_thr), float(pfer)


def subsample_indices(n: int, seed: int, b: int, attempt: int = 0) -> np.ndarray:
    """Sorted draw of floor(n/2) distinct row indices, deterministic in (seed, b, attempt)."""
    if n < 4:
        raise DataError(f"subsampling needs at least 4 rows, got: {n}")
    rng = np.random.default_rng([seed, b, attempt])
    return np.sort(rng.choice(n, size=n // 2, replace=False))


class StabilitySelector:
    """Runs the B subsample fits and aggregates selection frequencies."""

    def __init__(self, n_jobs: int = 1):
        self.n_jobs = n_jobs
        self.validator = InputValidator()
        self.booster = ComponentwiseBooster()

    def complete(self, config: StabilityConfig, p: int) -> StabilityConfig:
        """
        Fill in the missing hyperparameter.

        A config that already has all three must not claim a PFER below the
        bound its q and pi_thr imply; a floored q leaves pfer above it.
        """
        if config.is_complete:
            self.validator.validate_stability_config(config)
            if config.q > p:
                raise ConfigError(f"q={config.q} exceeds the number of variables p={p}")
            bound = pfer_bound(config.q, config.pi_thr, p)
            if config.pfer < bound * (1 - _FLOOR_TOLERANCE):
                raise ConfigError(
                    f"pfer={config.pfer} is below the bound {bound:.4g} implied by q={config.q}, "
                    f"pi_thr={config.pi_thr}, p={p}; give only two of q, pi_thr and pfer"
                )
            return config
        q, pi_thr, pfer = complete_config(p, q=config.q, pi_thr=config.pi_thr, pfer=config.pfer)
        return replace(config, q=q, pi_thr=pi_thr, pfer=pfer)

    def select(self, data: Dataset, boost: BoostConfig, stab: StabilityConfig) -> StabilityResult:
        """
        Stability selection on an unaugmented dataset.

        Args:
            data: Design matrix and response
            boost: Step length and loss (m_stop is replaced by stab.m_stop_cap)
            stab: Subsample count, hyperparameters (two of q/pi_thr/pfer suffice) and seed
        """
        self.validator.validate_dataset(data)
        self.validator.validate_unaugmented(data)
        self.validator.validate_boost_config(boost)
        stab = self.complete(stab, data.p)
        self.validator.validate_stability_config(stab)

        fit_config = replace(boost, m_stop=stab.m_stop_cap)
        logger.info(
            f"Stability selection: B={stab.b_subsamples}, q={stab.q}, pi_thr={stab.pi_thr:.3f}, "
            f"PFER={stab.pfer:.3f}, p={data.p}"
        )

        outcomes = Parallel(n_jobs=self.n_jobs)(
            delayed(self._fit_subsample)(data, fit_config, stab, b) for b in range(stab.b_subsamples)
        )
        per_subsample_sets = tuple(selected for selected, _ in outcomes)
        capped = sum(1 for _, hit_cap in outcomes if hit_cap)

        counts = np.zeros(data.p)
        for selected in per_subsample_sets:
            counts[list(selected)] += 1
        frequencies = counts / stab.b_subsamples
        stable_set = tuple(int(j) for j in np.flatnonzero(frequencies >= stab.pi_thr))

        warnings = ()
        if capped:
            message = (
                f"{capped} of {stab.b_subsamples} subsample fits reached m_stop_cap={stab.m_stop_cap} "
                f"before selecting q={stab.q} variables; frequencies may be biased downward"
            )
            logger.warning(message)
            warnings = (message,)

        return StabilityResult(
            frequencies=frequencies,
            stable_set=stable_set,
            per_subsample_sets=per_subsample_sets,
            config=stab,
            capped_subsamples=capped,
            warnings=warnings,
        )

    def _fit_subsample(
        self, data: Dataset, config: BoostConfig, stab: StabilityConfig, b: int
    ) -> tuple[frozenset[int], bool]:
        """Fit one half-sample; returns the distinct selections and whether the cap was hit."""
        rows = self._draw_usable_rows(data, config.loss, stab.seed, b)
        trace = self.booster.fit(data.take_rows(rows), config, DistinctSelectionStop(stab.q))
        logger.debug(f"Subsample {b}: {len(trace.selected)} variables in {trace.iterations_performed} iterations")
        return frozenset(trace.selected), not trace.stopped_by_rule

    @staticmethod
    def _draw_usable_rows(data: Dataset, loss: LossKind, seed: int, b: int) -> np.ndarray:
        """Redraw half-samples whose response is single-class under the logistic loss."""
        for attempt in range(MAX_REDRAWS):
            rows = subsample_indices(data.n, seed, b, attempt)
            if loss != LossKind.LOGISTIC:
                return rows
            mean = data.y[rows].mean()
            if 0.0 < mean < 1.0:
                return rows
            logger.warning(f"Subsample {b} attempt {attempt} has a single-class response; redrawing")
        raise ResamplingError(f"subsample {b} stayed degenerate after {MAX_REDRAWS} redraws")


def stability_select(
    data: Dataset, boost: BoostConfig, stab: StabilityConfig, n_jobs: int = 1
) -> StabilityResult:
    """Functional entry point for stability selection."""
    return StabilitySelector(n_jobs=n_jobs).select(data, boost, stab)
