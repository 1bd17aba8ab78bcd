"""
Benchmark Runner

For every scenario and replicate, generates one simulated instance and runs
every method on that same instance. Failures are recorded as rows with an
error label and the benchmark moves on.
"""

import logging
import time
from collections.abc import Sequence

import numpy as np
from joblib import Parallel, delayed

from .metrics import evaluate_selection, failed_record
from .models import BoostConfig, LossKind, SelectionMetrics, SimulationScenario
from .processor import MethodSpec, SelectionProcessor
from .simulation import SimulationGenerator
from .validators import InputValidator

logger = logging.getLogger(__name__)


def derive_seed(*entropy: int) -> int:
    """Stable 32-bit seed from an entropy tuple such as (seed, scenario, replicate, method)."""
    return int(np.random.SeedSequence(list(entropy)).generate_state(1)[0])


class BenchmarkRunner:
    """Runs methods over scenario x replicate grids and collects SelectionMetrics."""

    def __init__(self, n_jobs: int = 1, boost: BoostConfig | None = None, record_runtime: bool = True):
        self.n_jobs = n_jobs
        self.boost = boost or BoostConfig(nu=0.1, loss=LossKind.LOGISTIC)
        self.record_runtime = record_runtime
        self.validator = InputValidator()
        self.generator = SimulationGenerator()
        # selectors run single-threaded; parallelism is across (scenario, replicate) tasks
        self.processor = SelectionProcessor(n_jobs=1)

    def run(
        self,
        scenarios: Sequence[SimulationScenario],
        methods: Sequence[MethodSpec],
        seed: int = 0,
        response: str = "binary",
    ) -> list[SelectionMetrics]:
        """
        Run the benchmark.

        Returns:
            Records ordered by (scenario_id, replicate, method order), independent of scheduling
        """
        for scenario in scenarios:
            self.validator.validate_scenario(scenario)
        self.validator.validate_boost_config(self.boost)

        tasks = [
            (scenario_index, scenario, replicate)
            for scenario_index, scenario in enumerate(scenarios)
            for replicate in range(scenario.replications)
        ]
        logger.info(f"Benchmark: {len(scenarios)} scenarios, {len(tasks)} replicates, {len(methods)} methods")

        batches = Parallel(n_jobs=self.n_jobs)(
            delayed(self._run_replicate)(scenario_index, scenario, replicate, methods, seed, response)
            for scenario_index, scenario, replicate in tasks
        )
        records = [record for batch in batches for record in batch]
        rank = {spec.label: i for i, spec in enumerate(methods)}
        return sorted(records, key=lambda r: (r.scenario.scenario_id, r.replicate, rank[r.method]))

    def _run_replicate(
        self,
        scenario_index: int,
        scenario: SimulationScenario,
        replicate: int,
        methods: Sequence[MethodSpec],
        seed: int,
        response: str,
    ) -> list[SelectionMetrics]:
        """All methods on one shared instance."""
        instance = self.generator.generate(scenario, replicate, response)
        records = []
        for method_index, spec in enumerate(methods):
            method_seed = derive_seed(seed, scenario_index, replicate, method_index)
            start = time.perf_counter()
            try:
                outcome = self.processor.run_method(spec, instance.data, self.boost, method_seed)
            except Exception as e:
                elapsed = time.perf_counter() - start
                logger.warning(f"{scenario.scenario_id} replicate {replicate} {spec.label} failed: {e}")
                records.append(
                    failed_record(
                        e,
                        method=spec.label,
                        scenario=scenario,
                        replicate=replicate,
                        runtime_seconds=elapsed if self.record_runtime else 0.0,
                    )
                )
                continue

            records.append(
                evaluate_selection(
                    outcome.selected,
                    instance.informative_set,
                    method=spec.label,
                    scenario=scenario,
                    replicate=replicate,
                    runtime_seconds=outcome.runtime_seconds if self.record_runtime else 0.0,
                )
            )
        return records


def run_benchmark(
    scenarios: Sequence[SimulationScenario],
    methods: Sequence[MethodSpec],
    seed: int = 0,
    n_jobs: int = 1,
    boost: BoostConfig | None = None,
    record_runtime: bool = True,
    response: str = "binary",
) -> list[SelectionMetrics]:
    """Functional entry point for the benchmark."""
    runner = BenchmarkRunner(n_jobs=n_jobs, boost=boost, record_runtime=record_runtime)
    return runner.run(scenarios, methods, seed, response)
