"""
Domain Models for the Selection Engine

These dataclasses provide typed representations of datasets, hyperparameters
and results. Numeric payloads are numpy arrays; results are immutable once
built so they can be shared between threads and worker processes.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np

# Anything np.random.default_rng accepts as entropy.
SeedLike = int | Sequence[int] | np.random.SeedSequence


def frozen_array(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


# =============================================================================
# CORE BOOSTING
# =============================================================================


class LossKind(StrEnum):
    """Loss used by the booster."""

    SQUARED_ERROR = "squared_error"
    LOGISTIC = "logistic"


@dataclass(frozen=True, eq=False)
class Dataset:
    """Column-major design matrix with response and column metadata."""

    x: np.ndarray
    y: np.ndarray
    column_names: tuple[str, ...]
    shadow_mask: np.ndarray

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    @property
    def has_shadows(self) -> bool:
        return bool(self.shadow_mask.any())

    @classmethod
    def from_arrays(cls, x, y, column_names: Sequence[str] | None = None, shadow_mask=None) -> "Dataset":
        x = np.asfortranarray(np.asarray(x, dtype=float))
        if x.ndim == 1:
            x = x.reshape(-1, 1, order="F")
        y = np.asarray(y, dtype=float).ravel()
        if column_names is None:
            column_names = [f"x{j + 1}" for j in range(x.shape[1])]
        if shadow_mask is None:
            shadow_mask = np.zeros(x.shape[1], dtype=bool)
        return cls(
            x=x,
            y=y,
            column_names=tuple(str(name) for name in column_names),
            shadow_mask=np.asarray(shadow_mask, dtype=bool),
        )

    @classmethod
    def from_dict(cls, data: dict) -> "Dataset":
        return cls.from_arrays(data["x"], data["y"], data.get("column_names"))

    def take_rows(self, rows: np.ndarray) -> "Dataset":
        """Row subset (subsample, bootstrap draw) keeping column metadata."""
        return Dataset(
            x=np.asfortranarray(self.x[rows]),
            y=self.y[rows],
            column_names=self.column_names,
            shadow_mask=self.shadow_mask,
        )


@dataclass(frozen=True)
class BoostConfig:
    """Hyperparameters of component-wise boosting."""

    nu: float = 0.1
    m_stop: int = 100
    loss: LossKind = LossKind.SQUARED_ERROR
    center_covariates: bool = True

    @classmethod
    def from_dict(cls, data: dict) -> "BoostConfig":
        return cls(
            nu=float(data.get("nu", 0.1)),
            m_stop=int(data.get("m_stop", 100)),
            loss=LossKind(data.get("loss", LossKind.SQUARED_ERROR)),
            center_covariates=bool(data.get("center_covariates", True)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "nu": self.nu,
            "m_stop": self.m_stop,
            "loss": str(self.loss),
            "center_covariates": self.center_covariates,
        }


@dataclass(frozen=True, eq=False)
class FitTrace:
    """
    Complete record of one boosting run.

    step_sizes[k] is the increment (nu * slope) added to
    coefficients[selection_path[k]] at iteration k + 1.
    """

    offset: float
    column_means: np.ndarray
    coefficients: np.ndarray
    selection_path: tuple[int, ...]
    risk_path: tuple[float, ...]
    iterations_performed: int
    step_sizes: tuple[float, ...] = ()
    loss: LossKind = LossKind.SQUARED_ERROR
    stop_reason: str = "m_stop"

    @property
    def selected(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.selection_path)))

    @property
    def stopped_by_rule(self) -> bool:
        return self.stop_reason != "m_stop"

    def coefficients_at(self, m: int) -> np.ndarray:
        """Coefficient vector after the first m iterations."""
        if not 0 <= m <= self.iterations_performed:
            raise ValueError(f"m must be in [0, {self.iterations_performed}], got: {m}")
        coefficients = np.zeros_like(self.coefficients)
        for j, step in zip(self.selection_path[:m], self.step_sizes[:m], strict=True):
            coefficients[j] += step
        return coefficients


# =============================================================================
# PROBING
# =============================================================================


@dataclass(frozen=True, eq=False)
class ShadowAugmentedDataset:
    """Dataset inflated with one permuted copy of every original column."""

    base: Dataset
    origin_index: tuple[int, ...]
    permutation_seed: int


@dataclass(frozen=True, eq=False)
class ProbeResult:
    """
    Variables selected before the first shadow entered the model.

    stop_iteration is the iteration at which the first shadow was chosen.
    When the safety cap was hit without any shadow selection it equals
    m_stop + 1 and ``capped`` is True.
    """

    selected: tuple[int, ...]
    stop_iteration: int
    trace: FitTrace
    seed: int
    capped: bool = False


# =============================================================================
# STABILITY SELECTION
# =============================================================================


@dataclass(frozen=True)
class StabilityConfig:
    """Stability selection hyperparameters; any two of q, pi_thr, pfer determine the third."""

    b_subsamples: int = 100
    q: int | None = None
    pi_thr: float | None = None
    pfer: float | None = None
    m_stop_cap: int = 5000
    seed: int = 0

    @property
    def is_complete(self) -> bool:
        return None not in (self.q, self.pi_thr, self.pfer)

    @classmethod
    def from_dict(cls, data: dict) -> "StabilityConfig":
        q = data.get("q")
        pi_thr = data.get("pi_thr")
        pfer = data.get("pfer")
        return cls(
            b_subsamples=int(data.get("b_subsamples", 100)),
            q=int(q) if q is not None else None,
            pi_thr=float(pi_thr) if pi_thr is not None else None,
            pfer=float(pfer) if pfer is not None else None,
            m_stop_cap=int(data.get("m_stop_cap", 5000)),
            seed=int(data.get("seed", 0)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "b_subsamples": self.b_subsamples,
            "q": self.q,
            "pi_thr": self.pi_thr,
            "pfer": self.pfer,
            "m_stop_cap": self.m_stop_cap,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class StabilityResult:
    """Selection frequencies over B subsamples and the resulting stable set."""

    frequencies: np.ndarray
    stable_set: tuple[int, ...]
    per_subsample_sets: tuple[frozenset[int], ...]
    config: StabilityConfig
    capped_subsamples: int = 0
    warnings: tuple[str, ...] = ()


# =============================================================================
# RESAMPLING
# =============================================================================


@dataclass(frozen=True)
class CvConfig:
    """Bootstrap cross-validation settings."""

    folds: int = 25
    m_max: int = 1000
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "CvConfig":
        return cls(
            folds=int(data.get("folds", 25)),
            m_max=int(data.get("m_max", 1000)),
            seed=int(data.get("seed", 0)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"folds": self.folds, "m_max": self.m_max, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class CvResult:
    """Out-of-bag risk grid, chosen stopping iteration and the refit on all rows."""

    risk_matrix: np.ndarray
    mean_risk: np.ndarray
    m_opt: int
    final_trace: FitTrace

    @property
    def selected(self) -> tuple[int, ...]:
        return self.final_trace.selected


# =============================================================================
# SIMULATION
# =============================================================================


@dataclass(frozen=True)
class SimulationScenario:
    """One cell of the benchmark grid."""

    n: int
    p: int
    p_inf: int
    rho: float = 0.9
    replications: int = 100
    seed: int = 0

    @property
    def scenario_id(self) -> str:
        return f"n{self.n}_p{self.p}_inf{self.p_inf}_rho{self.rho:g}"

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationScenario":
        return cls(
            n=int(data["n"]),
            p=int(data["p"]),
            p_inf=int(data["p_inf"]),
            rho=float(data.get("rho", 0.9)),
            replications=int(data.get("replications", 100)),
            seed=int(data.get("seed", 0)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "p_inf": self.p_inf,
            "rho": self.rho,
            "replications": self.replications,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class SimulatedInstance:
    """Generated dataset together with the ground truth that produced it."""

    data: Dataset
    beta: np.ndarray
    informative_set: tuple[int, ...]
    eta: np.ndarray


# =============================================================================
# METRICS / BENCHMARK
# =============================================================================


@dataclass(frozen=True)
class SelectionMetrics:
    """Selection quality of one method on one replicate."""

    tpr: float
    fdr: float
    n_selected: int
    runtime_seconds: float
    method: str
    scenario: SimulationScenario
    replicate: int
    error: str | None = None

    @property
    def false_positives(self) -> int:
        return round(self.fdr * self.n_selected)

    def to_row(self) -> dict[str, Any]:
        scenario = self.scenario
        return {
            "scenario_id": scenario.scenario_id,
            "n": scenario.n,
            "p": scenario.p,
            "p_inf": scenario.p_inf,
            "rho": scenario.rho,
            "replicate": self.replicate,
            "method": self.method,
            "n_selected": self.n_selected,
            "tpr": self.tpr,
            "fdr": self.fdr,
            "runtime_seconds": self.runtime_seconds,
            "error": self.error or "",
        }


@dataclass(frozen=True, eq=False)
class SelectionOutcome:
    """What a selection method returns to the orchestrator."""

    method: str
    selected: tuple[int, ...]
    runtime_seconds: float
    frequencies: np.ndarray | None = None
    coefficients: np.ndarray | None = None
    details: dict[str, Any] = field(default_factory=dict)
