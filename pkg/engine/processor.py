"""
Selection Processor - Main Orchestrator

Dispatches selection methods by name so the CLI, the HTTP API and the
benchmark all run them the same way, with the same timing and defaults.
"""

import logging
import time
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from .boosting import ComponentwiseBooster
from .errors import ConfigError
from .models import (
    BoostConfig,
    CvConfig,
    CvResult,
    Dataset,
    FitTrace,
    ProbeResult,
    SelectionOutcome,
    StabilityConfig,
    StabilityResult,
)
from .selectors import BootstrapValidator, ShadowProber, StabilitySelector, default_probe_cap, make_shadows
from .validators import InputValidator

logger = logging.getLogger(__name__)

GRID_PFER = (1.0, 2.5, 8.0)
GRID_PI_THR = (0.6, 0.75, 0.9)

DEFAULT_B = StabilityConfig.b_subsamples
DEFAULT_M_STOP_CAP = StabilityConfig.m_stop_cap
DEFAULT_FOLDS = CvConfig.folds
DEFAULT_M_MAX = CvConfig.m_max


@dataclass(frozen=True)
class MethodSpec:
    """
    A selection method with its parameters.

    Text form: ``probing``, ``cv``, ``cv_augmented`` or
    ``stabsel:pfer=1:pi_thr=0.9`` (any two of q/pi_thr/pfer, plus optional
    b and m_stop_cap for stability selection, folds and m_max for CV).
    """

    kind: str
    params: tuple[tuple[str, float], ...] = ()

    KINDS = ("probing", "cv", "cv_augmented", "stabsel")
    PARAMS = {
        "probing": ("m_stop",),
        "cv": ("folds", "m_max"),
        "cv_augmented": ("folds", "m_max"),
        "stabsel": ("q", "pi_thr", "pfer", "b", "m_stop_cap"),
    }

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ConfigError(f"Invalid method: {self.kind}. Must be one of {self.KINDS}")
        allowed = self.PARAMS[self.kind]
        for name, _ in self.params:
            if name not in allowed:
                raise ConfigError(f"Unknown parameter '{name}' for method '{self.kind}'; allowed: {allowed}")

    @property
    def label(self) -> str:
        return ":".join([self.kind, *(f"{name}={value:g}" for name, value in self.params)])

    def param(self, name: str, default=None):
        return dict(self.params).get(name, default)

    @classmethod
    def parse(cls, text: str) -> "MethodSpec":
        kind, *pairs = text.strip().split(":")
        params = []
        for pair in pairs:
            name, sep, value = pair.partition("=")
            if not sep:
                raise ConfigError(f"Invalid method parameter '{pair}' in '{text}'; expected name=value")
            try:
                params.append((name.strip(), float(value)))
            except ValueError as e:
                raise ConfigError(f"Parameter '{name}' in '{text}' must be numeric, got: {value!r}") from e
        return cls(kind=kind.strip(), params=tuple(sorted(params)))

    @classmethod
    def for_stability(cls, config: StabilityConfig) -> "MethodSpec":
        """Spec from a StabilityConfig; b and m_stop_cap appear only when not at their defaults."""
        params = {name: getattr(config, name) for name in ("q", "pi_thr", "pfer") if getattr(config, name) is not None}
        if config.b_subsamples != DEFAULT_B:
            params["b"] = config.b_subsamples
        if config.m_stop_cap != DEFAULT_M_STOP_CAP:
            params["m_stop_cap"] = config.m_stop_cap
        return cls("stabsel", tuple(sorted(params.items())))

    @classmethod
    def for_cv(cls, config: CvConfig, augmented: bool = False) -> "MethodSpec":
        params = {}
        if config.folds != DEFAULT_FOLDS:
            params["folds"] = config.folds
        if config.m_max != DEFAULT_M_MAX:
            params["m_max"] = config.m_max
        return cls("cv_augmented" if augmented else "cv", tuple(sorted(params.items())))

    @classmethod
    def stability_grid(cls) -> list["MethodSpec"]:
        """Stability selection over PFER in {1, 2.5, 8} x pi_thr in {0.6, 0.75, 0.9}, q derived."""
        return [cls("stabsel", (("pfer", pfer), ("pi_thr", pi_thr))) for pfer in GRID_PFER for pi_thr in GRID_PI_THR]


class SelectionProcessor:
    """
    Main orchestrator for selection runs.

    Holds one instance of every selector and exposes:
    1. fit            - plain boosting for a fixed number of iterations
    2. probe          - probing (first shadow stops the fit)
    3. stabsel        - stability selection
    4. cv             - bootstrap cross-validation of m_stop
    5. cv_augmented   - bootstrap CV on the shadow-augmented matrix
    6. run_method     - any of the above by MethodSpec, timed
    """

    def __init__(self, n_jobs: int = 1):
        self.validator = InputValidator()
        self.booster = ComponentwiseBooster()
        self.prober = ShadowProber()
        self.stability_selector = StabilitySelector(n_jobs=n_jobs)
        self.bootstrap_validator = BootstrapValidator(n_jobs=n_jobs)

    def fit(self, data: Dataset, boost: BoostConfig) -> FitTrace:
        return self.booster.fit(data, boost)

    def probe(self, data: Dataset, boost: BoostConfig, seed: int, m_stop: int | None = None) -> ProbeResult:
        """Probing with boost's step length and loss; the iteration cap defaults to min(10n, 10000)."""
        cap = m_stop if m_stop is not None else default_probe_cap(data.n)
        return self.prober.select(data, replace(boost, m_stop=cap), seed)

    def stabsel(self, data: Dataset, boost: BoostConfig, stab: StabilityConfig) -> StabilityResult:
        return self.stability_selector.select(data, boost, stab)

    def cv(self, data: Dataset, boost: BoostConfig, cv: CvConfig) -> CvResult:
        return self.bootstrap_validator.validate(data, boost, cv)

    def cv_augmented(self, data: Dataset, boost: BoostConfig, cv: CvConfig, seed: int) -> tuple[CvResult, tuple[int, ...]]:
        """
        Bootstrap CV on the same shadow-augmented matrix probing uses.

        Returns the CV result and its selected original (non-shadow) columns.
        """
        augmented = make_shadows(data, seed)
        result = self.bootstrap_validator.validate(augmented.base, boost, cv)
        originals = tuple(j for j in result.selected if not augmented.base.shadow_mask[j])
        return result, originals

    def run_method(self, spec: MethodSpec, data: Dataset, boost: BoostConfig, seed: int) -> SelectionOutcome:
        """Run one method and time the selection call only."""
        start = time.perf_counter()
        outcome = self._dispatch(spec, data, boost, seed)
        runtime = time.perf_counter() - start
        logger.info(f"{spec.label}: {len(outcome.selected)} of {data.p} variables selected in {runtime:.3f}s")
        return replace(outcome, runtime_seconds=runtime)

    def run_fit(self, data: Dataset, boost: BoostConfig) -> tuple[FitTrace, SelectionOutcome]:
        """Plain fit for boost.m_stop iterations; the outcome selects every column the path touched."""
        start = time.perf_counter()
        trace = self.fit(data, boost)
        outcome = SelectionOutcome(
            method="fit",
            selected=trace.selected,
            runtime_seconds=time.perf_counter() - start,
            coefficients=trace.coefficients,
            details={"iterations": trace.iterations_performed, "final_risk": trace.risk_path[-1]},
        )
        return trace, outcome

    def process_from_dict(self, payload: dict[str, Any]) -> dict[str, Any]:
        """
        Run a selection from a raw dictionary request.

        Convenience method for API usage.
        """
        data = Dataset.from_dict(payload["data"])
        method = payload.get("method", "probing")
        seed = int(payload.get("seed", 0))
        boost = BoostConfig.from_dict(payload.get("boost", {}))

        if method == "fit":
            _, outcome = self.run_fit(data, boost)
        else:
            spec = MethodSpec.parse(method)
            if spec.kind == "stabsel":
                stability = StabilityConfig.from_dict(payload.get("stability", {}))
                spec = _merge_params(spec, MethodSpec.for_stability(stability))
            elif spec.kind in ("cv", "cv_augmented"):
                spec = _merge_params(spec, MethodSpec.for_cv(CvConfig.from_dict(payload.get("cv", {}))))
            outcome = self.run_method(spec, data, boost, seed)

        return self._outcome_to_dict(outcome, data)

    # -------------------------------------------------------------------------

    def _dispatch(self, spec: MethodSpec, data: Dataset, boost: BoostConfig, seed: int) -> SelectionOutcome:
        if spec.kind == "probing":
            m_stop = spec.param("m_stop")
            result = self.probe(data, boost, seed, int(m_stop) if m_stop is not None else None)
            return SelectionOutcome(
                method=spec.label,
                selected=result.selected,
                runtime_seconds=0.0,
                coefficients=result.trace.coefficients[: data.p],
                details={"stop_iteration": result.stop_iteration, "capped": result.capped},
            )

        if spec.kind in ("cv", "cv_augmented"):
            cv = CvConfig(folds=int(spec.param("folds", DEFAULT_FOLDS)), m_max=int(spec.param("m_max", DEFAULT_M_MAX)), seed=seed)
            if spec.kind == "cv":
                result = self.cv(data, boost, cv)
                selected = result.selected
                coefficients = result.final_trace.coefficients
            else:
                result, selected = self.cv_augmented(data, boost, cv, seed)
                coefficients = result.final_trace.coefficients[: data.p]
            return SelectionOutcome(
                method=spec.label,
                selected=selected,
                runtime_seconds=0.0,
                coefficients=coefficients,
                details={"m_opt": result.m_opt},
            )

        q = spec.param("q")
        stab = StabilityConfig(
            b_subsamples=int(spec.param("b", DEFAULT_B)),
            q=int(q) if q is not None else None,
            pi_thr=spec.param("pi_thr"),
            pfer=spec.param("pfer"),
            m_stop_cap=int(spec.param("m_stop_cap", DEFAULT_M_STOP_CAP)),
            seed=seed,
        )
        result = self.stabsel(data, boost, stab)
        return SelectionOutcome(
            method=spec.label,
            selected=result.stable_set,
            runtime_seconds=0.0,
            frequencies=result.frequencies,
            details={
                "q": result.config.q,
                "pi_thr": result.config.pi_thr,
                "pfer": result.config.pfer,
                "capped_subsamples": result.capped_subsamples,
            },
        )

    @staticmethod
    def _outcome_to_dict(outcome: SelectionOutcome, data: Dataset) -> dict[str, Any]:
        """Convert a SelectionOutcome to a dictionary for the API response."""
        names = data.column_names
        output: dict[str, Any] = {
            "method": outcome.method,
            "selected": [names[j] for j in outcome.selected],
            "selected_indices": list(outcome.selected),
            "n_selected": len(outcome.selected),
            "runtime_seconds": outcome.runtime_seconds,
            "details": {key: _plain(value) for key, value in outcome.details.items()},
        }
        if outcome.frequencies is not None:
            output["frequencies"] = {name: float(freq) for name, freq in zip(names, outcome.frequencies, strict=True)}
        if outcome.coefficients is not None:
            output["coefficients"] = {
                names[j]: float(outcome.coefficients[j]) for j in np.flatnonzero(outcome.coefficients)
            }
        return output


def _merge_params(spec: MethodSpec, section: MethodSpec) -> MethodSpec:
    """Parameters written in the method string win over the request section."""
    params = dict(section.params)
    params.update(spec.params)
    return MethodSpec(spec.kind, tuple(sorted(params.items())))


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    return value
