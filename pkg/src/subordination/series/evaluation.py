"""Series evaluation: u(t) = sum E_k phi_k(t) and the West-type series.

Provides:
- eval_series: sum of coefficients against rescaled moments of any symbol
- direct_series: sum E_k t^(alpha k) / Gamma(alpha k + 1), the stable route
- west_series: sum r^k E_alpha(-k t^alpha), r = (u0 - 1) / u0
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from ..core.config import InversionSettings
from ..core.errors import DivergenceDomainError, ParameterDomainError
from ..special.mittag_leffler import mittag_leffler
from ..special.moments import moment_phi_k
from ..symbols.base import SymbolSpec
from .coefficients import SeriesCoefficients
from .radius import RadiusEstimate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series value.

    Attributes:
        t: Evaluation time
        value: Partial sum
        trunc_bound: Truncation error estimate
        beyond_radius: Set when t lies outside the estimated radius
    """

    t: float
    value: float
    trunc_bound: float
    beyond_radius: bool = False


def _beyond(radius: RadiusEstimate | None, t: float, alpha: float) -> bool:
    if radius is None:
        return False
    x = t**alpha if radius.variable == "t^alpha" else t
    return bool(x >= radius.r)


def eval_series(
    coeffs: SeriesCoefficients,
    spec: SymbolSpec,
    t: float,
    radius: RadiusEstimate | None = None,
    method: str | None = None,
    settings: InversionSettings | None = None,
) -> SeriesValue:
    """Evaluate u(t) = sum_k E_k phi_k(t) with phi_k from the symbol.

    The truncation error is estimated by the last retained term.

    Args:
        coeffs: E_0..E_K
        spec: Symbol defining phi_k
        t: Time >= 0
        radius: Optional radius estimate; t beyond it sets beyond_radius
        method: Laplace inverter for families without closed-form phi_k

    Raises:
        NumericalToleranceError: If a phi_k inversion fails
    """
    if t < 0:
        raise ParameterDomainError("t must be nonnegative", details={"t": t})
    phis = np.array([moment_phi_k(spec, k, t, method, settings) for k in range(coeffs.K + 1)])
    terms = coeffs.values * phis
    alpha = coeffs.alpha if coeffs.alpha is not None else spec.params.get("alpha", 1.0)
    beyond = _beyond(radius, t, alpha)
    if beyond:
        logger.warning("t=%g lies beyond the estimated radius %.6g", t, radius.r if radius else 0.0)
    return SeriesValue(t, float(terms.sum()), float(abs(terms[-1])), beyond)


def direct_series(coeffs: SeriesCoefficients, t: ArrayLike) -> NDArray[np.float64] | float:
    """sum_k E_k t^(alpha k) / Gamma(alpha k + 1) using coeffs.alpha.

    Raises:
        ParameterDomainError: If the coefficients carry no alpha
    """
    if coeffs.alpha is None:
        raise ParameterDomainError("direct_series needs coefficients with an alpha")
    alpha = coeffs.alpha
    tt = np.asarray(t, dtype=np.float64)
    k = np.arange(coeffs.K + 1, dtype=np.float64)
    powers = np.power.outer(tt, alpha * k)
    out = powers @ (coeffs.values * special.rgamma(alpha * k + 1.0))
    return float(out) if tt.ndim == 0 else out


def west_series(alpha: float, u0: float, t: float, K: int = 200) -> SeriesValue:
    """K-term partial sum of sum_k ((u0 - 1)/u0)^k E_alpha(-k t^alpha).

    The tail is bounded by |r|^K / (1 - |r|) since 0 < E_alpha(-x) <= 1. Any
    u0 > 1/2 gives |r| < 1; u0 >= 1 makes every term nonnegative.

    Raises:
        DivergenceDomainError: If u0 <= 1/2 (|r| >= 1)
        ParameterDomainError: If t < 0 or K < 1
    """
    if not u0 > 0.5:
        raise DivergenceDomainError(
            "West series requires u0 > 1/2",
            details={"u0": u0, "ratio": (u0 - 1.0) / u0},
        )
    if t < 0 or K < 1:
        raise ParameterDomainError("west_series needs t >= 0 and K >= 1", details={"t": t, "K": K})
    r = (u0 - 1.0) / u0
    k = np.arange(K, dtype=np.float64)
    ml = np.asarray(mittag_leffler(alpha, -k * t**alpha))
    value = float(np.sum(r**k * ml))
    bound = abs(r) ** K / (1.0 - abs(r))
    return SeriesValue(t, value, bound)
