"""
Selection Metrics

True positive rate, false discovery rate and the per-scenario summaries of
benchmark records. All set functions are order-independent.
"""

from collections.abc import Iterable, Mapping

import numpy as np
import pandas as pd

from .models import SelectionMetrics, SimulationScenario


def tpr(selected: Iterable[int], informative: Iterable[int]) -> float:
    """|selected & informative| / |informative|."""
    selected, informative = set(selected), set(informative)
    if not informative:
        raise ValueError("true positive rate is undefined for an empty informative set")
    return len(selected & informative) / len(informative)


def fdr(selected: Iterable[int], informative: Iterable[int]) -> float:
    """
    |selected - informative| / |selected|.

    An empty selection has FDR 0, which flatters methods that select nothing.
    """
    selected, informative = set(selected), set(informative)
    if not selected:
        return 0.0
    return len(selected - informative) / len(selected)


def evaluate_selection(
    selected: Iterable[int],
    informative: Iterable[int],
    *,
    method: str,
    scenario: SimulationScenario,
    replicate: int,
    runtime_seconds: float,
) -> SelectionMetrics:
    """Build the metrics record for one method on one replicate."""
    selected = set(selected)
    informative = set(informative)
    return SelectionMetrics(
        # TPR of a global-null scenario is reported as 0 (nothing to find)
        tpr=tpr(selected, informative) if informative else 0.0,
        fdr=fdr(selected, informative),
        n_selected=len(selected),
        runtime_seconds=runtime_seconds,
        method=method,
        scenario=scenario,
        replicate=replicate,
    )


def failed_record(
    error: Exception, *, method: str, scenario: SimulationScenario, replicate: int, runtime_seconds: float
) -> SelectionMetrics:
    """Record for a run that raised; metrics are NaN and the error label is the exception class."""
    return SelectionMetrics(
        tpr=float("nan"),
        fdr=float("nan"),
        n_selected=0,
        runtime_seconds=runtime_seconds,
        method=method,
        scenario=scenario,
        replicate=replicate,
        error=type(error).__name__,
    )


def records_frame(records: Iterable[SelectionMetrics], method_order: list[str] | None = None) -> pd.DataFrame:
    """Rows sorted by (scenario, replicate, method) regardless of the order they were produced in."""
    frame = pd.DataFrame([record.to_row() for record in records])
    if frame.empty:
        return frame
    if method_order is not None:
        rank = {name: i for i, name in enumerate(method_order)}
        frame["_method_rank"] = frame["method"].map(rank)
    else:
        frame["_method_rank"] = frame["method"]
    frame = frame.sort_values(["scenario_id", "replicate", "_method_rank"], kind="mergesort")
    return frame.drop(columns="_method_rank").reset_index(drop=True)


def summarize(records: Iterable[SelectionMetrics]) -> dict[str, dict[str, dict[str, float]]]:
    """
    Per scenario_id and method: mean/sd of TPR and FDR, mean runtime and selected-set size.

    Failed runs are counted but excluded from the statistics. sd uses ddof=1
    and is 0 for a single record.
    """
    frame = records_frame(records)
    if frame.empty:
        return {}

    summary: dict[str, dict[str, dict[str, float]]] = {}
    for (scenario_id, method), group in frame.groupby(["scenario_id", "method"], sort=True):
        ok = group[group["error"] == ""]
        summary.setdefault(scenario_id, {})[method] = {
            "tpr_mean": _mean(ok["tpr"]),
            "tpr_sd": _sd(ok["tpr"]),
            "fdr_mean": _mean(ok["fdr"]),
            "fdr_sd": _sd(ok["fdr"]),
            "runtime_mean": _mean(ok["runtime_seconds"]),
            "n_selected_mean": _mean(ok["n_selected"]),
            "runs": int(len(ok)),
            "failures": int(len(group) - len(ok)),
        }
    return summary


def overlap_table(selections: Mapping[str, Iterable[int]]) -> pd.DataFrame:
    """Selected-set sizes on the diagonal, pairwise intersection sizes off it."""
    sets = {name: set(selected) for name, selected in selections.items()}
    names = list(sets)
    table = np.array([[len(sets[a] & sets[b]) for b in names] for a in names], dtype=int)
    return pd.DataFrame(table, index=names, columns=names)


def _mean(values: pd.Series) -> float:
    return float(values.mean()) if len(values) else float("nan")


def _sd(values: pd.Series) -> float:
    if len(values) < 2:
        return 0.0
    return float(values.std(ddof=1))
