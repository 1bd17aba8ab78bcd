"""
Output Builder

Turns selection outcomes, fit traces and benchmark records into the CSV and
JSON artifacts the CLI writes.
"""

import json
import math
from collections.abc import Iterable
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from .metrics import records_frame, summarize
from .models import Dataset, FitTrace, SelectionMetrics, SelectionOutcome

METRICS_COLUMNS = [
    "scenario_id",
    "n",
    "p",
    "p_inf",
    "rho",
    "replicate",
    "method",
    "n_selected",
    "tpr",
    "fdr",
    "runtime_seconds",
    "error",
]


def json_safe(value: Any) -> Any:
    """Recursively convert numpy scalars/arrays to Python types and NaN to None."""
    if isinstance(value, dict):
        return {str(key): json_safe(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [json_safe(item) for item in value]
    if isinstance(value, np.ndarray):
        return [json_safe(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class OutputBuilder:
    """Builds and writes output artifacts."""

    def __init__(self, clock=None):
        self._clock = clock or (lambda: datetime.now(UTC))

    # -------------------------------------------------------------------------
    # Selection
    # -------------------------------------------------------------------------

    def selection_frame(self, outcome: SelectionOutcome, data: Dataset) -> pd.DataFrame:
        """One row per original column: variable, selected, plus frequency/coefficient when available."""
        selected = np.zeros(data.p, dtype=bool)
        selected[list(outcome.selected)] = True
        frame = pd.DataFrame({"variable": list(data.column_names), "selected": selected})
        if outcome.frequencies is not None:
            frame["frequency"] = np.asarray(outcome.frequencies)[: data.p]
        if outcome.coefficients is not None:
            frame["coefficient"] = np.asarray(outcome.coefficients)[: data.p]
        return frame

    def write_selection(self, outcome: SelectionOutcome, data: Dataset, path: str | Path) -> Path:
        path = Path(path)
        self.selection_frame(outcome, data).to_csv(path, index=False, lineterminator="\n")
        return path

    def trace_dict(self, trace: FitTrace, data: Dataset) -> dict[str, Any]:
        names = data.column_names
        return json_safe(
            {
                "loss": str(trace.loss),
                "offset": trace.offset,
                "iterations_performed": trace.iterations_performed,
                "stop_reason": trace.stop_reason,
                "column_means": dict(zip(names, trace.column_means.tolist(), strict=True)),
                "coefficients": dict(zip(names, trace.coefficients.tolist(), strict=True)),
                "selection_path": [names[j] for j in trace.selection_path],
                "risk_path": list(trace.risk_path),
            }
        )

    def write_trace_json(self, trace: FitTrace, data: Dataset, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.trace_dict(trace, data), indent=2) + "\n")
        return path

    # -------------------------------------------------------------------------
    # Benchmark
    # -------------------------------------------------------------------------

    def metrics_frame(self, records: Iterable[SelectionMetrics], method_order: list[str] | None = None) -> pd.DataFrame:
        frame = records_frame(records, method_order)
        if frame.empty:
            return pd.DataFrame(columns=METRICS_COLUMNS)
        return frame[METRICS_COLUMNS]

    def write_metrics(
        self,
        records: Iterable[SelectionMetrics],
        path: str | Path,
        method_order: list[str] | None = None,
    ) -> Path:
        """
        Write metrics.csv.

        The first line is a ``#`` comment with the generation time; everything
        after it depends only on the records. Read back with
        ``pd.read_csv(path, comment="#")``.
        """
        path = Path(path)
        frame = self.metrics_frame(records, method_order)
        with open(path, "w", newline="") as f:
            f.write(f"# generated {self._clock().isoformat(timespec='seconds')}\n")
            frame.to_csv(f, index=False, lineterminator="\n")
        return path

    def write_summary(self, records: Iterable[SelectionMetrics], path: str | Path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(json_safe(summarize(records)), indent=2, sort_keys=True) + "\n")
        return path

    def write_overlap(self, table: pd.DataFrame, path: str | Path) -> Path:
        path = Path(path)
        table.to_csv(path, index_label="method", lineterminator="\n")
        return path
