"""Empirical convergence radius of coefficient sequences.

Euler and geometric sequences are read as power series in x = t^alpha
with coefficients c_k = E_k / Gamma(alpha k + 1). Custom sequences are
read as plain power series sum E_k x^k.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from ..core.errors import ParameterDomainError, UndefinedRadiusError
from .coefficients import SeriesCoefficients, SeriesKind

logger = logging.getLogger(__name__)

MIN_COEFFICIENTS = 8
DISAGREEMENT = 0.20
SUPERGEOMETRIC_RATIO = 0.85
ZERO_RTOL = 1e-9


class RadiusMethod(str, Enum):
    """Estimator behind a radius point estimate."""

    RATIO = "ratio"
    ROOT = "root"


@dataclass(frozen=True)
class RadiusEstimate:
    """Convergence radius estimate.

    Attributes:
        r: Point estimate (math.inf for entire series)
        method: Estimator the point estimate comes from
        ratio: Ratio-test estimate
        root: Root-test estimate
        unstable: Set when ratio and root differ by more than 20%
        variable: "t^alpha" or "t"
    """

    r: float
    method: RadiusMethod
    ratio: float
    root: float
    unstable: bool
    variable: str


def _negligible(E: np.ndarray) -> np.ndarray:
    """Entries that are zero up to rounding relative to their neighbours."""
    mag = np.abs(E)
    neighbours = np.maximum(np.roll(mag, 1), np.roll(mag, -1))
    neighbours[0] = mag[1]
    neighbours[-1] = mag[-2]
    return mag <= ZERO_RTOL * neighbours


def estimate_radius(coeffs: SeriesCoefficients) -> RadiusEstimate:
    """Estimate the convergence radius from the tail of the coefficients.

    Raises:
        ParameterDomainError: If fewer than 8 coefficients are given
        UndefinedRadiusError: If the tail is identically zero
    """
    E = coeffs.values
    if E.size < MIN_COEFFICIENTS:
        raise ParameterDomainError(
            "Radius estimation needs at least 8 coefficients", details={"count": int(E.size)}
        )

    k = np.arange(E.size, dtype=np.float64)
    if coeffs.kind == SeriesKind.CUSTOM:
        variable = "t"
        log_gamma = np.zeros_like(k)
    else:
        alpha = coeffs.alpha if coeffs.alpha is not None else 1.0
        variable = "t^alpha" if alpha != 1.0 else "t"
        log_gamma = special.gammaln(alpha * k + 1.0)

    tail = np.arange(E.size // 2, E.size)
    tail = tail[(tail > 0) & ~_negligible(E)[tail]]
    if tail.size == 0:
        raise UndefinedRadiusError(
            "Coefficient tail is identically zero", details={"K": int(E.size - 1)}
        )
    log_c = np.log(np.abs(E[tail])) - log_gamma[tail]

    rho = np.exp(-log_c / tail)
    root = float(rho.min())
    if tail.size >= 2:
        j, m = tail[-2], tail[-1]
        ratio = float(np.exp((log_c[-2] - log_c[-1]) / (m - j)))
    else:
        ratio = root

    if tail.size >= 2 and rho[0] < SUPERGEOMETRIC_RATIO * rho[-1]:
        logger.debug("Root estimates grow along the tail: treating series as entire")
        return RadiusEstimate(math.inf, RadiusMethod.ROOT, ratio, math.inf, False, variable)

    unstable = abs(ratio - root) > DISAGREEMENT * min(ratio, root)
    if unstable:
        logger.warning("Ratio (%.6g) and root (%.6g) radius estimates disagree", ratio, root)
    return RadiusEstimate(ratio, RadiusMethod.RATIO, ratio, root, unstable, variable)
