"""Density of the inverse stable subordinator.

l(t, x) = t^-alpha M_alpha(x t^-alpha), with M_alpha the Wright (Mainardi)
function M_alpha(z) = sum_k (-z)^k / (k! Gamma(1 - alpha - alpha k)).
The alternating series is summed in mpmath at a precision chosen from the
size of its largest term.
"""

import logging
import math

import mpmath as mp
import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from ..core.errors import NumericalToleranceError, ParameterDomainError
from ..symbols.base import FloatOrArray

logger = logging.getLogger(__name__)

MAX_DPS = 500
_CUTOFF_EXPONENT = 40.0
_MAX_TERMS = 200_000


def _decay_exponent(alpha: float, z: float) -> float:
    """B z^(1/(1-alpha)) in M_alpha(z) ~ exp(-B z^(1/(1-alpha)))."""
    return (1.0 - alpha) * (alpha**alpha * z) ** (1.0 / (1.0 - alpha))


def inv_stable_cutoff(alpha: float, t: float = 1.0) -> float:
    """Abscissa beyond which l(t, .) is below roughly e^-40."""
    z = (_CUTOFF_EXPONENT / (1.0 - alpha)) ** (1.0 - alpha) / alpha**alpha
    return z * t**alpha


def _peak_term_log10(alpha: float, z: float, k_peak: int) -> float:
    # |1/Gamma(1 - alpha - alpha k)| <= Gamma(alpha k + alpha) / pi
    k = np.arange(2 * k_peak + 2, dtype=np.float64)
    logs = (
        k * math.log(z) - special.gammaln(k + 1.0) + special.gammaln(alpha * k + alpha)
    ) / math.log(10.0)
    return float(logs.max()) - math.log10(math.pi)


def _sum_series(alpha: float, z: float, dps: int, k_peak: int, stop_log10: float) -> float:
    with mp.workdps(dps):
        zz = mp.mpf(z)
        a = mp.mpf(alpha)
        threshold = mp.mpf(10) ** stop_log10
        total = mp.mpf(0)
        power = mp.mpf(1)
        for k in range(_MAX_TERMS):
            if k:
                power *= -zz / k
            total += power * mp.rgamma(1 - a - a * k)
            if k > k_peak and abs(power) * mp.gamma(a * k + a) < threshold:
                return float(total)
    raise NumericalToleranceError(
        "Wright series did not converge",
        details={"alpha": alpha, "z": z, "terms": _MAX_TERMS},
    )


def wright_m(alpha: float, z: float) -> float:
    """Evaluate M_alpha(z) for z >= 0.

    Raises:
        NumericalToleranceError: If the required precision exceeds MAX_DPS
    """
    if z == 0.0:
        return float(mp.rgamma(1 - mp.mpf(alpha)))

    k_peak = int((alpha**alpha * z) ** (1.0 / (1.0 - alpha))) + 1
    if k_peak > _MAX_TERMS // 2:
        raise NumericalToleranceError(
            "Wright series peak lies beyond the term budget",
            details={"alpha": alpha, "z": z, "k_peak": k_peak},
        )
    decay = _decay_exponent(alpha, z) / math.log(10.0)
    dps = int(20 + max(0.0, _peak_term_log10(alpha, z, k_peak)) + decay)
    if dps > MAX_DPS:
        raise NumericalToleranceError(
            "Wright series needs more than the allowed working precision",
            details={"alpha": alpha, "z": z, "dps": dps, "max_dps": MAX_DPS},
        )
    logger.debug("Wright M(%g) at alpha=%g with dps=%d", z, alpha, dps)
    return _sum_series(alpha, z, dps, k_peak, stop_log10=-(decay + 20.0))


def inv_stable_density(alpha: float, t: float, x: ArrayLike) -> FloatOrArray:
    """Density l(t, x) of the inverse stable subordinator L_t.

    Args:
        alpha: Stable index in (0, 1)
        t: Wall-clock time > 0
        x: Point(s) x > 0

    Raises:
        ParameterDomainError: On arguments outside the domain
        NumericalToleranceError: If the series cannot be summed
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterDomainError("alpha must lie in (0, 1)", details={"alpha": alpha})
    if not t > 0:
        raise ParameterDomainError("t must be positive", details={"t": t})
    arr = np.asarray(x, dtype=np.float64)
    if np.any(~(arr > 0)):
        raise ParameterDomainError("x must be positive", details={"x": str(x)})

    scale = t**-alpha
    values = np.array([scale * wright_m(alpha, float(v) * scale) for v in arr.ravel()])
    if arr.ndim == 0:
        return float(values[0])
    return values.reshape(arr.shape)
