"""
CSV Dataset I/O

Reads a header + numeric table into a Dataset with one designated response
column, rejecting blank or non-numeric cells with their row and column.
Row numbers in messages are 1-based data rows (the header is not counted).
"""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from .errors import DataError
from .models import Dataset, SimulatedInstance

logger = logging.getLogger(__name__)


def load_csv(path: str | Path, response: str) -> Dataset:
    """
    Load a CSV file with a header row.

    Args:
        path: CSV file
        response: Name of the response column; every other column is a covariate

    Raises:
        DataError: missing file or response column, blank / non-numeric cell, fewer than 2 rows
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")

    raw = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    if response not in raw.columns:
        raise DataError(f"response column '{response}' not found in {path.name}; columns: {list(raw.columns)}")
    if len(raw) < 2:
        raise DataError(f"{path.name} needs at least 2 data rows, got: {len(raw)}")

    numeric = pd.DataFrame({column: _parse_column(raw[column], column) for column in raw.columns})
    covariates = [column for column in raw.columns if column != response]
    if not covariates:
        raise DataError(f"{path.name} has no covariate columns besides '{response}'")

    logger.info(f"Loaded {path.name}: n={len(numeric)}, p={len(covariates)}, response='{response}'")
    return Dataset.from_arrays(
        numeric[covariates].to_numpy(dtype=float),
        numeric[response].to_numpy(dtype=float),
        covariates,
    )


def write_csv(data: Dataset, path: str | Path, response: str = "y") -> Path:
    """Write a Dataset so that load_csv(path, response) reproduces it exactly."""
    if response in data.column_names:
        raise DataError(f"response name '{response}' collides with a covariate column")
    frame = pd.DataFrame(data.x, columns=list(data.column_names))
    frame[response] = data.y
    path = Path(path)
    # float_format=None writes repr(), which parses back to the identical double
    frame.to_csv(path, index=False)
    return path


def write_instance(instance: SimulatedInstance, path: str | Path, response: str = "y") -> tuple[Path, Path]:
    """Write a simulated dataset plus a <stem>_truth.csv sidecar with beta and the informative flags."""
    path = Path(path)
    write_csv(instance.data, path, response)
    truth_path = path.with_name(f"{path.stem}_truth.csv")
    informative = np.zeros(instance.data.p, dtype=bool)
    informative[list(instance.informative_set)] = True
    pd.DataFrame(
        {
            "variable": list(instance.data.column_names),
            "beta": instance.beta,
            "informative": informative,
        }
    ).to_csv(truth_path, index=False)
    return path, truth_path


def _parse_column(values: pd.Series, column: str) -> pd.Series:
    parsed = pd.to_numeric(values, errors="coerce")
    bad = parsed.isna() | ~np.isfinite(parsed.to_numpy(dtype=float, na_value=np.nan))
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        cell = values.iloc[row]
        if cell.strip() == "":
            raise DataError(f"blank cell at row {row + 1}, column '{column}'")
        raise DataError(f"non-numeric or non-finite value {cell!r} at row {row + 1}, column '{column}'")
    # float() parsing is correctly rounded, so written reprs read back bit-identical
    return values.astype(float)
