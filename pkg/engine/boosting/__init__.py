"""
Boosting Package

Losses, linear base learners, stopping rules and the component-wise booster.
"""

from .booster import ComponentwiseBooster, boost_fit, predict
from .learners import BaseLearnerFit, fit_all_base_learners, fit_base_learner
from .losses import LogisticLoss, SquaredErrorLoss, empirical_risk, get_loss, init_offset, negative_gradient
from .stopping import DistinctSelectionStop, FirstShadowStop, FixedIterations, SelectionStep, StopAction, StoppingRule

__all__ = [
    "ComponentwiseBooster",
    "boost_fit",
    "predict",
    "BaseLearnerFit",
    "fit_base_learner",
    "fit_all_base_learners",
    "SquaredErrorLoss",
    "LogisticLoss",
    "get_loss",
    "init_offset",
    "negative_gradient",
    "empirical_risk",
    "StoppingRule",
    "SelectionStep",
    "StopAction",
    "FixedIterations",
    "FirstShadowStop",
    "DistinctSelectionStop",
]
