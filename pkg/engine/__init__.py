"""
PROBEBOOST SELECTION ENGINE
Component-wise boosting with probing, stability selection and bootstrap CV
"""

from .benchmark import BenchmarkRunner, run_benchmark
from .boosting import ComponentwiseBooster, boost_fit, predict
from .models import BoostConfig, CvConfig, Dataset, FitTrace, LossKind, SimulationScenario, StabilityConfig
from .processor import MethodSpec, SelectionProcessor
from .selectors import bootstrap_cv, probe_select, stability_select

__all__ = [
    "BenchmarkRunner",
    "BoostConfig",
    "ComponentwiseBooster",
    "CvConfig",
    "Dataset",
    "FitTrace",
    "LossKind",
    "MethodSpec",
    "SelectionProcessor",
    "SimulationScenario",
    "StabilityConfig",
    "boost_fit",
    "bootstrap_cv",
    "predict",
    "probe_select",
    "run_benchmark",
    "stability_select",
]
