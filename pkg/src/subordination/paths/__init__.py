"""Subordinator paths module.

Provides:
- SamplePath simulation with horizon extension
- Inverse process L by grid inversion and time-changed curves v(L_t)
- The delayed-growth experiment (delayed_growth_panels)
"""

from .panels import GrowthPanels, delayed_growth_panels, longest_plateau
from .functionals import exponential_curve, logistic_curve, make_functional
from .horizon import HorizonPolicy
from .inverse import TimeChangedPath, inverse_path, inverse_path_grid, time_changed_path
from .sampling import SamplePath, extend_path, sample_batch, sample_subordinator

__all__ = [
    "SamplePath",
    "sample_subordinator",
    "extend_path",
    "sample_batch",
    "HorizonPolicy",
    "TimeChangedPath",
    "inverse_path",
    "inverse_path_grid",
    "time_changed_path",
    "logistic_curve",
    "exponential_curve",
    "make_functional",
    "GrowthPanels",
    "delayed_growth_panels",
    "longest_plateau",
]
