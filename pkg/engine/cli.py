"""
Command-line front end (``probeboost``).

Subcommands: fit, probe, stabsel, cv, analyze (CSV input), simulate and
benchmark (simulated data). Every flag can also come from a flat YAML file
given with --config; flags win over file values.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 runtime failure.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from .benchmark import BenchmarkRunner
from .config import (
    LOG_LEVELS,
    RunConfig,
    configure_logging,
    default_jobs,
    load_config,
    merge_settings,
    save_config,
)
from .datasets import load_csv, write_instance
from .errors import ConfigError, DataError
from .metrics import overlap_table
from .models import Dataset, LossKind
from .output import OutputBuilder
from .processor import MethodSpec, SelectionProcessor
from .simulation import SimulationGenerator, scenario_grid

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4

DEFAULT_METHODS = "probing,cv"
DEFAULT_RESPONSE = "y"

# argparse dest -> flat config key, for flags whose dest differs from the key
_FLAG_KEYS = {"input": "input_path", "output": "output_path"}
_CONTROL_FLAGS = ("config", "log_level", "jobs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probeboost",
        description="Variable selection for component-wise boosting: probing, stability selection, bootstrap CV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="Boost for a fixed number of iterations")
    _add_common(fit)
    _add_csv_input(fit)
    _add_boost(fit)
    fit.add_argument("--m-stop", dest="m_stop", type=int, default=None, help="Iterations (default 100)")
    fit.add_argument("--trace-json", dest="trace_json", default=None, help="Also write the fit trace as JSON")

    probe = sub.add_parser("probe", help="Probing: stop at the first selected shadow variable")
    _add_common(probe)
    _add_csv_input(probe)
    _add_boost(probe)
    probe.add_argument("--m-stop", dest="m_stop", type=int, default=None, help="Safety cap (default min(10n, 10000))")

    stabsel = sub.add_parser("stabsel", help="Stability selection (give any two of --q, --pi-thr, --pfer)")
    _add_common(stabsel)
    _add_csv_input(stabsel)
    _add_boost(stabsel)
    _add_stability(stabsel)

    cv = sub.add_parser("cv", help="Bootstrap cross-validation of the stopping iteration")
    _add_common(cv)
    _add_csv_input(cv)
    _add_boost(cv)
    _add_cv(cv)
    cv.add_argument("--augmented", action="store_true", default=None, help="Run on the shadow-augmented matrix")

    analyze = sub.add_parser("analyze", help="Run CV, probing and stability selection on one CSV and compare")
    _add_common(analyze)
    _add_csv_input(analyze)
    _add_boost(analyze)
    _add_stability(analyze)
    _add_cv(analyze)

    simulate = sub.add_parser("simulate", help="Write one simulated replicate as CSV plus a truth sidecar")
    _add_common(simulate)
    _add_scenario(simulate)
    simulate.add_argument("--replicate", type=int, default=None, help="Replicate index (default 0)")
    simulate.add_argument("--response-kind", dest="response_kind", choices=SimulationGenerator.RESPONSES, default=None)
    simulate.add_argument("--response", default=None, help="Response column name (default y)")

    benchmark = sub.add_parser("benchmark", help="Monte Carlo comparison of selection methods")
    _add_common(benchmark)
    _add_boost(benchmark)
    _add_scenario(benchmark)
    benchmark.add_argument("--replications", type=int, default=None, help="Replicates per scenario (default 100)")
    benchmark.add_argument(
        "--methods",
        default=None,
        help=f"Comma-separated methods, e.g. 'probing,cv,stabsel:pfer=1:pi_thr=0.9' (default {DEFAULT_METHODS})",
    )
    benchmark.add_argument(
        "--stability-grid",
        "--paper-grid",
        dest="stability_grid",
        action="store_true",
        default=None,
        help="Add stability selection for PFER in {1, 2.5, 8} x pi_thr in {0.6, 0.75, 0.9}",
    )
    benchmark.add_argument(
        "--scenario-grid",
        dest="scenario_grid",
        action="store_true",
        default=None,
        help="Use the 12-scenario grid n in {100, 500}, p in {100, 500, 1000}, p_inf in {5, 20}, rho = 0.9",
    )
    benchmark.add_argument(
        "--cv-augmented", dest="cv_augmented", action="store_true", default=None, help="Add CV on the augmented matrix"
    )
    benchmark.add_argument(
        "--no-runtime",
        dest="no_runtime",
        action="store_true",
        default=None,
        help="Write runtime_seconds as 0.0 so reruns with the same seed give identical metrics.csv rows "
        "(only the # timestamp line differs); wall-clock runtimes otherwise vary between runs",
    )
    return parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="Flat YAML config file; flags override its values")
    parser.add_argument("--seed", type=int, default=None, help="Random seed (default 0)")
    parser.add_argument("-o", "--output", default=None, help="Output file (output directory for benchmark)")
    parser.add_argument("--jobs", type=int, default=None, help="Parallel workers (default $PROBEBOOST_JOBS or 1)")
    parser.add_argument("--log-level", dest="log_level", choices=LOG_LEVELS, default=None)


def _add_csv_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", default=None, help="CSV file with a header row")
    parser.add_argument("--response", default=None, help="Response column name (default y)")


def _add_boost(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nu", type=float, default=None, help="Step length in (0, 1] (default 0.1)")
    parser.add_argument("--loss", choices=[str(kind) for kind in LossKind], default=None)


def _add_stability(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, default=None, help="Distinct variables per subsample fit")
    parser.add_argument("--pi-thr", dest="pi_thr", type=float, default=None, help="Frequency threshold in (0.5, 1]")
    parser.add_argument("--pfer", type=float, default=None, help="Per-family error rate bound")
    parser.add_argument("--b", dest="b_subsamples", type=int, default=None, help="Subsamples (default 100)")
    parser.add_argument("--m-stop-cap", dest="m_stop_cap", type=int, default=None, help="Per-fit cap (default 5000)")


def _add_cv(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--folds", type=int, default=None, help="Bootstrap replicates (default 25)")
    parser.add_argument("--m-max", dest="m_max", type=int, default=None, help="Iteration grid size (default 1000)")


def _add_scenario(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=None, help="Rows")
    parser.add_argument("--p", type=int, default=None, help="Covariates")
    parser.add_argument("--p-inf", dest="p_inf", type=int, default=None, help="Informative covariates")
    parser.add_argument("--rho", type=float, default=None, help="Toeplitz correlation in [0, 1) (default 0.9)")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """defaults < --config file < flags."""
    file_values = load_config(args.config) if args.config else {}
    if file_values.get("command", args.command) != args.command:
        raise ConfigError(f"config file is for '{file_values['command']}', not '{args.command}'")

    flag_values = {
        _FLAG_KEYS.get(key, key): value for key, value in vars(args).items() if key not in _CONTROL_FLAGS
    }
    return RunConfig.from_dict(merge_settings(file_values, flag_values))


# =============================================================================
# COMMANDS
# =============================================================================


def _load_input(config: RunConfig) -> Dataset:
    if not config.input_path:
        raise ConfigError(f"'{config.command}' needs an input CSV (--input or input_path)")
    return load_csv(config.input_path, config.get("response", DEFAULT_RESPONSE))


def _require_output(config: RunConfig) -> Path:
    if not config.output_path:
        raise ConfigError(f"'{config.command}' needs an output path (--output or output_path)")
    return Path(config.output_path)


def cmd_fit(config: RunConfig, processor: SelectionProcessor, output: OutputBuilder) -> None:
    data = _load_input(config)
    path = _require_output(config)
    trace, outcome = processor.run_fit(data, config.boost_config())
    output.write_selection(outcome, data, path)
    if config.get("trace_json"):
        output.write_trace_json(trace, data, config.get("trace_json"))
    logger.info(f"fit: {len(outcome.selected)} variables entered in {trace.iterations_performed} iterations")


def cmd_probe(config: RunConfig, processor: SelectionProcessor, output: OutputBuilder) -> None:
    data = _load_input(config)
    path = _require_output(config)
    m_stop = config.get("m_stop")
    spec = MethodSpec("probing", (("m_stop", int(m_stop)),) if m_stop is not None else ())
    outcome = processor.run_method(spec, data, config.boost_config(), config.seed)
    output.write_selection(outcome, data, path)


def cmd_stabsel(config: RunConfig, processor: SelectionProcessor, output: OutputBuilder) -> None:
    data = _load_input(config)
    path = _require_output(config)
    spec = MethodSpec.for_stability(config.stability_config())
    outcome = processor.run_method(spec, data, config.boost_config(), config.seed)
    output.write_selection(outcome, data, path)


def cmd_cv(config: RunConfig, processor: SelectionProcessor, output: OutputBuilder) -> None:
    data = _load_input(config)
    path = _require_output(config)
    spec = MethodSpec.for_cv(config.cv_config(), augmented=bool(config.get("augmented", False)))
    outcome = processor.run_method(spec, data, config.boost_config(), config.seed)
    output.write_selection(outcome, data, path)


def cmd_analyze(config: RunConfig, processor: SelectionProcessor, output: OutputBuilder) -> None:
    """CV, probing and stability selection on the same data; writes the overlap table and a selection matrix."""
    data = _load_input(config)
    path = _require_output(config)
    boost = config.boost_config()
    specs = [
        MethodSpec.for_cv(config.cv_config()),
        MethodSpec("probing"),
        MethodSpec.for_stability(config.stability_config()),
    ]
    outcomes = {spec.label: processor.run_method(spec, data, boost, config.seed) for spec in specs}

    output.write_overlap(overlap_table({label: outcome.selected for label, outcome in outcomes.items()}), path)
    matrix = pd.DataFrame({"variable": list(data.column_names)})
    for label, outcome in outcomes.items():
        matrix[label] = matrix.index.isin(outcome.selected)
    matrix.to_csv(path.with_name(f"{path.stem}_selections.csv"), index=False, lineterminator="\n")


def cmd_simulate(config: RunConfig, processor: SelectionProcessor, output: OutputBuilder) -> None:
    path = _require_output(config)
    scenario = config.scenario()
    replicate = int(config.get("replicate", 0))
    instance = SimulationGenerator().generate(scenario, replicate, config.get("response_kind", "binary"))
    data_path, truth_path = write_instance(instance, path, config.get("response", DEFAULT_RESPONSE))
    logger.info(f"Wrote {scenario.scenario_id} replicate {replicate} to {data_path} (truth: {truth_path.name})")


def benchmark_methods(config: RunConfig) -> list[MethodSpec]:
    """Methods from --methods, extended by --stability-grid and --cv-augmented; duplicates dropped."""
    methods = [MethodSpec.parse(text) for text in str(config.get("methods", DEFAULT_METHODS)).split(",") if text.strip()]
    if config.get("stability_grid"):
        methods.extend(MethodSpec.stability_grid())
    if config.get("cv_augmented"):
        methods.append(MethodSpec("cv_augmented"))
    unique = list(dict.fromkeys(methods))
    if not unique:
        raise ConfigError("benchmark needs at least one method")
    return unique


def cmd_benchmark(config: RunConfig, jobs: int, output: OutputBuilder) -> None:
    out_dir = _require_output(config)
    if config.get("scenario_grid"):
        scenarios = scenario_grid(int(config.get("replications", 100)), config.seed)
    else:
        scenarios = [config.scenario()]
    methods = benchmark_methods(config)

    runner = BenchmarkRunner(
        n_jobs=jobs,
        boost=config.boost_config(),
        record_runtime=not config.get("no_runtime", False),
    )
    records = runner.run(scenarios, methods, config.seed, config.get("response_kind", "binary"))

    out_dir.mkdir(parents=True, exist_ok=True)
    output.write_metrics(records, out_dir / "metrics.csv", [spec.label for spec in methods])
    output.write_summary(records, out_dir / "summary.json")
    save_config(config, out_dir / "config.yaml")
    failures = sum(record.error is not None for record in records)
    logger.info(f"Benchmark wrote {len(records)} rows ({failures} failed) to {out_dir}")


_COMMANDS = {
    "fit": cmd_fit,
    "probe": cmd_probe,
    "stabsel": cmd_stabsel,
    "cv": cmd_cv,
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
}


def run(config: RunConfig, jobs: int) -> None:
    output = OutputBuilder()
    if config.command == "benchmark":
        cmd_benchmark(config, jobs, output)
        return
    _COMMANDS[config.command](config, SelectionProcessor(n_jobs=jobs), output)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG

    try:
        configure_logging(args.log_level)
        jobs = args.jobs if args.jobs is not None else default_jobs()
        config = resolve_config(args)
        run(config, jobs)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except DataError as e:
        logger.error(f"Data error: {e}")
        return EXIT_DATA
    except Exception as e:
        logger.exception(f"Run failed: {e}")
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
