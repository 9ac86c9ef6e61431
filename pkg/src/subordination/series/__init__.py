"""Series module.

Provides:
- Fractional binomial coefficients and fractional Euler numbers
- Series evaluation against rescaled moments, the direct stable route
  and the West-type Mittag-Leffler series
- Convergence-radius estimation
"""

from .coefficients import (
    SeriesCoefficients,
    SeriesKind,
    custom_coefficients,
    frac_binom,
    frac_euler_numbers,
    geometric_coefficients,
)
from .evaluation import SeriesValue, direct_series, eval_series, west_series
from .radius import RadiusEstimate, RadiusMethod, estimate_radius

__all__ = [
    "SeriesKind",
    "SeriesCoefficients",
    "frac_binom",
    "frac_euler_numbers",
    "geometric_coefficients",
    "custom_coefficients",
    "SeriesValue",
    "eval_series",
    "direct_series",
    "west_series",
    "RadiusMethod",
    "RadiusEstimate",
    "estimate_radius",
]
