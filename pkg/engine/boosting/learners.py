"""
Linear Base Learners

Slope-only least-squares fits of one centered covariate to the negative
gradient. A zero-variance column cannot be fit; its criterion is +inf so it
never wins the argmin.
"""

from dataclasses import dataclass

import numpy as np

# relative gap to the smallest shortcut sse below which columns are re-scored exactly
NEAR_TIE_TOLERANCE = 1e-8


@dataclass(frozen=True)
class BaseLearnerFit:
    """Result of fitting one column to the working residual."""

    slope: float
    sse: float

    @property
    def fittable(self) -> bool:
        return np.isfinite(self.sse)


def fit_base_learner(x_j: np.ndarray, u: np.ndarray) -> BaseLearnerFit:
    """Fit u ~ slope * x_j and return the slope with its residual sum of squares."""
    x_j = np.asarray(x_j, dtype=float)
    u = np.asarray(u, dtype=float)
    sq_norm = float(x_j @ x_j)
    if sq_norm == 0.0:
        return BaseLearnerFit(slope=0.0, sse=float("inf"))
    slope = float(x_j @ u) / sq_norm
    residual = u - slope * x_j
    return BaseLearnerFit(slope=slope, sse=float(residual @ residual))


def fit_all_base_learners(x: np.ndarray, u: np.ndarray, sq_norms: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Fit every column at once.

    Screens with sse_j = <u, u> - <x_j, u>^2 / <x_j, x_j>, then recomputes the
    residual sum of squares directly for every column within rounding distance
    of the minimum, since the shortcut cancels and can misorder near-ties.
    Returns (slopes, sse) with slope 0 and sse +inf for unfittable columns.
    """
    xtu = x.T @ u
    fittable = sq_norms > 0.0
    slopes = np.zeros_like(xtu)
    np.divide(xtu, sq_norms, out=slopes, where=fittable)
    sse = np.full_like(xtu, np.inf)
    if not fittable.any():
        return slopes, sse

    utu = float(u @ u)
    sse[fittable] = utu - xtu[fittable] * slopes[fittable]
    near = np.flatnonzero(sse <= sse.min() + NEAR_TIE_TOLERANCE * max(utu, 1.0))
    residuals = u[:, None] - x[:, near] * slopes[near]
    sse[near] = np.einsum("ij,ij->j", residuals, residuals)
    return slopes, sse


def best_learner(sse: np.ndarray) -> int:
    """Index of the smallest sse; ties go to the lowest column index."""
    # np.argmin returns the first occurrence of the minimum
    return int(np.argmin(sse))
