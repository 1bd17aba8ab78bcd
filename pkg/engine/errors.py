"""
Exception hierarchy for the selection engine.

Validation failures subclass ValueError so callers that only know about
ValueError (the API layer, older scripts) keep catching them.
"""


class ConfigError(ValueError):
    """Invalid, incomplete or contradictory hyperparameters."""


class DataError(ValueError):
    """Invalid dataset content or shape."""


class DegenerateResponseError(DataError):
    """Logistic response that does not contain both classes."""


class NoUsableCovariateError(DataError):
    """Every covariate has zero variance, so no base learner can be fit."""


class ResamplingError(RuntimeError):
    """A subsample or bootstrap replicate could not be drawn within the retry limit."""
