"""
Probing

Inflates the design with a randomly permuted copy (shadow) of every column,
boosts on the inflated data and stops as soon as a shadow would enter the
model. Everything selected before that point is returned.

Permutations use numpy's PCG64 generator (np.random.default_rng) seeded with
the entropy tuple (seed, j), so column j's shadow does not depend on how
many other columns exist or in which order they are drawn.
"""

import logging

import numpy as np

from ..boosting import ComponentwiseBooster, FirstShadowStop
from ..models import BoostConfig, Dataset, ProbeResult, ShadowAugmentedDataset
from ..validators import InputValidator

logger = logging.getLogger(__name__)

SHADOW_PREFIX = "shadow_"
MAX_DEFAULT_CAP = 10_000


def default_probe_cap(n: int) -> int:
    """Safety cap on probing iterations: min(10 * n, 10000)."""
    return min(10 * n, MAX_DEFAULT_CAP)


def permute_column(column: np.ndarray, seed: int, j: int) -> np.ndarray:
    """Uniform random permutation of one column, deterministic in (seed, j)."""
    rng = np.random.default_rng([seed, j])
    return rng.permutation(np.asarray(column))


def make_shadows(data: Dataset, seed: int) -> ShadowAugmentedDataset:
    """Return [x_1 .. x_p, shadow(x_1) .. shadow(x_p)] with the shadow mask set."""
    InputValidator().validate_unaugmented(data)
    p = data.p
    shadows = np.column_stack([permute_column(data.x[:, j], seed, j) for j in range(p)])
    augmented = Dataset(
        x=np.asfortranarray(np.hstack([data.x, shadows])),
        y=data.y,
        column_names=data.column_names + tuple(f"{SHADOW_PREFIX}{name}" for name in data.column_names),
        shadow_mask=np.concatenate([np.zeros(p, dtype=bool), np.ones(p, dtype=bool)]),
    )
    return ShadowAugmentedDataset(base=augmented, origin_index=tuple(range(p)), permutation_seed=seed)


class ShadowProber:
    """Variable selection by stopping at the first shadow selection."""

    def __init__(self):
        self.validator = InputValidator()
        self.booster = ComponentwiseBooster()

    def select(self, data: Dataset, config: BoostConfig | None = None, seed: int = 0) -> ProbeResult:
        """
        Run probing on an unaugmented dataset.

        config.m_stop is only a safety cap. When it is reached without any
        shadow selection the result is flagged ``capped`` and its
        stop_iteration is m_stop + 1.
        """
        self.validator.validate_dataset(data)
        self.validator.validate_unaugmented(data)
        if config is None:
            config = BoostConfig(m_stop=default_probe_cap(data.n))

        augmented = make_shadows(data, seed)
        trace = self.booster.fit(augmented.base, config, FirstShadowStop())

        leaked = [j for j in trace.selection_path if augmented.base.shadow_mask[j]]
        if leaked:
            raise RuntimeError(f"shadow columns leaked into the probing selection: {leaked}")

        capped = not trace.stopped_by_rule
        if capped:
            logger.warning(f"Probing reached the safety cap of {config.m_stop} iterations without selecting a shadow")

        result = ProbeResult(
            selected=trace.selected,
            stop_iteration=trace.iterations_performed + 1,
            trace=trace,
            seed=seed,
            capped=capped,
        )
        logger.info(
            f"Probing selected {len(result.selected)} of {data.p} variables, "
            f"first shadow at iteration {result.stop_iteration}"
        )
        return result


def probe_select(data: Dataset, config: BoostConfig | None = None, seed: int = 0) -> ProbeResult:
    """Functional entry point for probing."""
    return ShadowProber().select(data, config, seed)
