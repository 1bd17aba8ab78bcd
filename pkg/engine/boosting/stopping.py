"""
Stopping Rules

A stopping rule is consulted after the best base learner of an iteration has
been chosen and before the predictor is updated. It decides whether to keep
going, to apply the update and stop, or to stop without applying it.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Protocol

import numpy as np


class StopAction(Enum):
    CONTINUE = "continue"
    STOP_AFTER_UPDATE = "stop_after_update"
    STOP_BEFORE_UPDATE = "stop_before_update"


@dataclass(frozen=True)
class SelectionStep:
    """What a rule can see about the current iteration."""

    j_star: int
    shadow_mask: np.ndarray
    m: int
    distinct_selected: frozenset[int]


class StoppingRule(Protocol):
    name: str

    def evaluate(self, step: SelectionStep) -> StopAction: ...


class FixedIterations:
    """Never fires; the booster's iteration budget ends the fit."""

    name = "m_stop"

    def evaluate(self, step: SelectionStep) -> StopAction:
        return StopAction.CONTINUE


class FirstShadowStop:
    """Fires on the first shadow selection; that update is discarded."""

    name = "first_shadow"

    def evaluate(self, step: SelectionStep) -> StopAction:
        if step.shadow_mask[step.j_star]:
            return StopAction.STOP_BEFORE_UPDATE
        return StopAction.CONTINUE


@dataclass(frozen=True)
class DistinctSelectionStop:
    """Fires once q distinct variables have been selected (counting ever-selected, not non-zero)."""

    q: int
    name: str = "q_reached"

    def evaluate(self, step: SelectionStep) -> StopAction:
        count = len(step.distinct_selected | {step.j_star})
        if count >= self.q:
            return StopAction.STOP_AFTER_UPDATE
        return StopAction.CONTINUE
