"""
Run Configuration

A RunConfig is one flat key space: the command, its input/output paths, the
seed and every hyperparameter of the configs it feeds (BoostConfig,
StabilityConfig, CvConfig, SimulationScenario). Config files are flat YAML
mappings; command-line flags override file values, which override defaults.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .errors import ConfigError
from .models import BoostConfig, CvConfig, LossKind, SimulationScenario, StabilityConfig

logger = logging.getLogger(__name__)

COMMANDS = ("fit", "probe", "stabsel", "cv", "simulate", "benchmark", "analyze")
SIMULATED_COMMANDS = ("simulate", "benchmark")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

JOBS_ENV = "PROBEBOOST_JOBS"
LOG_LEVEL_ENV = "PROBEBOOST_LOG_LEVEL"

_RESERVED = ("command", "input_path", "output_path", "seed")
_SCALARS = (str, int, float, bool, type(None))


@dataclass
class RunConfig:
    """Command plus flat method parameters."""

    command: str
    input_path: str | None = None
    output_path: str | None = None
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Invalid command: {self.command}. Must be one of {COMMANDS}")
        for key, value in self.params.items():
            if not isinstance(value, _SCALARS):
                raise ConfigError(f"Config value for '{key}' must be a scalar, got: {type(value).__name__}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        if "command" not in data:
            raise ConfigError("Config must name a command")
        params = {key: value for key, value in data.items() if key not in _RESERVED}
        try:
            seed = int(data.get("seed") or 0)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"seed must be an integer, got: {data.get('seed')!r}") from e
        return cls(
            command=str(data["command"]),
            input_path=_optional_str(data.get("input_path")),
            output_path=_optional_str(data.get("output_path")),
            seed=seed,
            params=params,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "input_path": self.input_path,
            "output_path": self.output_path,
            "seed": self.seed,
            **self.params,
        }

    def get(self, key: str, default=None):
        value = self.params.get(key)
        return default if value is None else value

    # -------------------------------------------------------------------------
    # Module configs
    # -------------------------------------------------------------------------

    def default_loss(self) -> LossKind:
        return LossKind.LOGISTIC if self.command in SIMULATED_COMMANDS else LossKind.SQUARED_ERROR

    def boost_config(self) -> BoostConfig:
        return self._build(
            BoostConfig,
            {
                "nu": self.get("nu", 0.1),
                "m_stop": self.get("m_stop", 100),
                "loss": self.get("loss", self.default_loss()),
                "center_covariates": self.get("center_covariates", True),
            },
        )

    def stability_config(self) -> StabilityConfig:
        return self._build(
            StabilityConfig,
            {
                "b_subsamples": self.get("b_subsamples", 100),
                "q": self.get("q"),
                "pi_thr": self.get("pi_thr"),
                "pfer": self.get("pfer"),
                "m_stop_cap": self.get("m_stop_cap", 5000),
                "seed": self.seed,
            },
        )

    def cv_config(self) -> CvConfig:
        return self._build(
            CvConfig,
            {"folds": self.get("folds", 25), "m_max": self.get("m_max", 1000), "seed": self.seed},
        )

    def scenario(self) -> SimulationScenario:
        missing = [key for key in ("n", "p", "p_inf") if self.get(key) is None]
        if missing:
            raise ConfigError(f"Simulation needs {missing} (flags or config file)")
        return self._build(
            SimulationScenario,
            {
                "n": self.get("n"),
                "p": self.get("p"),
                "p_inf": self.get("p_inf"),
                "rho": self.get("rho", 0.9),
                "replications": self.get("replications", 100),
                "seed": self.seed,
            },
        )

    @staticmethod
    def _build(config_type, values: dict[str, Any]):
        try:
            return config_type.from_dict(values)
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"Invalid {config_type.__name__} value: {e}") from e


def load_config(path: str | Path) -> dict[str, Any]:
    """Read a flat YAML mapping. Nested mappings and lists are rejected."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"config file {path} is not valid YAML: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must be a key: value mapping, got: {type(data).__name__}")
    for key, value in data.items():
        if not isinstance(value, _SCALARS):
            raise ConfigError(f"config key '{key}' must hold a scalar, got: {type(value).__name__}")
    return {str(key): value for key, value in data.items()}


def save_config(config: RunConfig, path: str | Path) -> Path:
    """Write config as flat YAML; load_config(path) reproduces config.to_dict()."""
    path = Path(path)
    with open(path, "w") as f:
        yaml.safe_dump(config.to_dict(), f, sort_keys=True, default_flow_style=False)
    return path


def merge_settings(file_values: dict[str, Any], flag_values: dict[str, Any]) -> dict[str, Any]:
    """Flags that were actually given (not None) win over file values."""
    merged = dict(file_values)
    merged.update({key: value for key, value in flag_values.items() if value is not None})
    return merged


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError as e:
        raise ConfigError(f"{JOBS_ENV} must be an integer, got: {raw!r}") from e
    if jobs == 0:
        raise ConfigError(f"{JOBS_ENV} must be non-zero, got: 0")
    return jobs


def default_log_level() -> str:
    return os.environ.get(LOG_LEVEL_ENV, "INFO").upper()


def configure_logging(level: str | None = None) -> None:
    """Root logging setup for entry points only."""
    level = (level or default_log_level()).upper()
    if level not in LOG_LEVELS:
        raise ConfigError(f"log level must be one of {LOG_LEVELS}, got: {level}")
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _optional_str(value) -> str | None:
    return None if value is None else str(value)
