"""
Loss Functions

Each loss provides its loss-minimal constant, negative gradient and mean
empirical risk. The logistic loss uses y in {0, 1} and f on the log-odds
scale: rho(y, f) = log(1 + e^f) - y*f, so the negative gradient is y - sigma(f).
"""

import numpy as np
from scipy.special import expit, logit

from ..errors import DegenerateResponseError
from ..models import LossKind


class SquaredErrorLoss:
    """rho(y, f) = (y - f)^2 / 2."""

    kind = LossKind.SQUARED_ERROR

    def offset(self, y: np.ndarray) -> float:
        return float(np.mean(y))

    def negative_gradient(self, y: np.ndarray, f: np.ndarray) -> np.ndarray:
        return y - f

    def risk(self, y: np.ndarray, f: np.ndarray) -> float:
        return float(np.mean(0.5 * (y - f) ** 2))


class LogisticLoss:
    """rho(y, f) = log(1 + e^f) - y*f with y coded 0/1."""

    kind = LossKind.LOGISTIC

    def offset(self, y: np.ndarray) -> float:
        mean = float(np.mean(y))
        if mean <= 0.0 or mean >= 1.0:
            raise DegenerateResponseError(f"logistic offset is infinite for a single-class response (mean={mean})")
        return float(logit(mean))

    def negative_gradient(self, y: np.ndarray, f: np.ndarray) -> np.ndarray:
        return y - expit(f)

    def risk(self, y: np.ndarray, f: np.ndarray) -> float:
        # logaddexp(0, f) == log(1 + e^f) without overflow for large f
        return float(np.mean(np.logaddexp(0.0, f) - y * f))


_LOSSES = {
    LossKind.SQUARED_ERROR: SquaredErrorLoss(),
    LossKind.LOGISTIC: LogisticLoss(),
}


def get_loss(kind: LossKind) -> SquaredErrorLoss | LogisticLoss:
    """Look up the loss implementation for a LossKind."""
    try:
        return _LOSSES[LossKind(kind)]
    except (KeyError, ValueError) as e:
        raise ValueError(f"Unknown loss: {kind}") from e


def init_offset(y: np.ndarray, loss: LossKind) -> float:
    """Loss-minimal constant: mean(y) or logit(mean(y))."""
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        raise ValueError("response must not be empty")
    return get_loss(loss).offset(y)


def negative_gradient(loss: LossKind, y: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Negative gradient of the per-observation loss with respect to f."""
    y = np.asarray(y, dtype=float)
    f = np.asarray(f, dtype=float)
    if y.shape != f.shape:
        raise ValueError(f"y and f must have the same shape, got: {y.shape} and {f.shape}")
    return get_loss(loss).negative_gradient(y, f)


def empirical_risk(loss: LossKind, y: np.ndarray, f: np.ndarray) -> float:
    """Mean loss over observations."""
    y = np.asarray(y, dtype=float)
    f = np.asarray(f, dtype=float)
    if y.shape != f.shape:
        raise ValueError(f"y and f must have the same shape, got: {y.shape} and {f.shape}")
    return get_loss(loss).risk(y, f)
