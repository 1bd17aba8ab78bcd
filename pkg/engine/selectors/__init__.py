"""
Selectors Package

Variable selection procedures built on the component-wise booster.
"""

from .probing import ShadowProber, default_probe_cap, make_shadows, permute_column, probe_select
from .resampling import BootstrapValidator, bootstrap_cv, oob_risk_path
from .stability import StabilitySelector, complete_config, stability_select, subsample_indices

__all__ = [
    "ShadowProber",
    "make_shadows",
    "permute_column",
    "probe_select",
    "default_probe_cap",
    "StabilitySelector",
    "complete_config",
    "subsample_indices",
    "stability_select",
    "BootstrapValidator",
    "bootstrap_cv",
    "oob_risk_path",
]
