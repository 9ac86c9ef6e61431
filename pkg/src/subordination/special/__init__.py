"""Special functions module.

Provides:
- Mittag-Leffler function E_alpha on real arguments
- Inverse stable density via the Wright function
- Numerical Laplace inversion (Gaver-Stehfest, Talbot)
- Rescaled moments phi_k of the inverse subordinator
"""

from .laplace import InversionCrossCheck, cross_check, laplace_invert
from .mittag_leffler import SERIES_SWITCH, mittag_leffler, ml_method
from .moments import MomentLadder, moment_ladder, moment_phi_k, moment_transform, phi_k_table
from .wright import inv_stable_cutoff, inv_stable_density, wright_m

__all__ = [
    "mittag_leffler",
    "ml_method",
    "SERIES_SWITCH",
    "inv_stable_density",
    "inv_stable_cutoff",
    "wright_m",
    "laplace_invert",
    "cross_check",
    "InversionCrossCheck",
    "MomentLadder",
    "moment_phi_k",
    "moment_ladder",
    "moment_transform",
    "phi_k_table",
]
