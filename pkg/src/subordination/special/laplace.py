"""Numerical inverse Laplace transform (Gaver-Stehfest and fixed Talbot).

Both inverters come from mpmath.invertlaplace. Gaver-Stehfest only
samples the transform on the positive real axis; Talbot needs it on a
complex contour.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import mpmath as mp

from ..core.config import InversionSettings
from ..core.errors import NumericalToleranceError, ParameterDomainError

logger = logging.getLogger(__name__)

Transform = Callable[[Any], Any]

METHODS = ("gaver_stehfest", "talbot")

# Relative gap tolerated between Gaver-Stehfest orders N and N - 2
STEHFEST_SANITY_RTOL = 1e-3

DEFAULT_INVERSION = InversionSettings()


def _invert(F: Transform, t: float, method: str, degree: int) -> float:
    mp_method = "stehfest" if method == "gaver_stehfest" else "talbot"
    try:
        value = mp.invertlaplace(F, t, method=mp_method, degree=degree)
    except (ZeroDivisionError, ValueError, OverflowError) as e:
        raise NumericalToleranceError(
            "Laplace transform could not be evaluated on the inversion nodes",
            details={"method": method, "t": t, "degree": degree},
            cause=e,
        ) from e
    result = float(mp.re(value))
    if not math.isfinite(result):
        raise NumericalToleranceError(
            "Laplace inversion returned a non-finite value",
            details={"method": method, "t": t, "degree": degree},
        )
    return result


def laplace_invert(
    F: Transform,
    t: float,
    method: str | None = None,
    settings: InversionSettings | None = None,
) -> float:
    """Invert a Laplace transform at time t.

    Args:
        F: Transform evaluator on mpmath numbers (real or complex)
        t: Time > 0
        method: "gaver_stehfest" or "talbot" (default from settings)
        settings: Orders and tolerances

    Returns:
        f(t)

    Raises:
        ParameterDomainError: On t <= 0 or an unknown method
        NumericalToleranceError: If Gaver-Stehfest orders N and N - 2
            disagree, or the result is not finite
    """
    settings = settings or DEFAULT_INVERSION
    method = method or settings.method
    if method not in METHODS:
        raise ParameterDomainError(
            f"Unknown inversion method '{method}'", details={"accepted": ", ".join(METHODS)}
        )
    if not t > 0:
        raise ParameterDomainError("Laplace inversion requires t > 0", details={"t": t})

    if method == "talbot":
        return _invert(F, t, method, settings.talbot_nodes)

    order = settings.stehfest_order
    value = _invert(F, t, method, order)
    coarse = _invert(F, t, method, order - 2)
    gap = abs(value - coarse) / max(abs(value), 1e-300)
    if gap > STEHFEST_SANITY_RTOL:
        raise NumericalToleranceError(
            "Gaver-Stehfest result oscillates across orders",
            details={"t": t, "order": order, "value": value, "lower_order_value": coarse, "gap": gap},
        )
    return value


@dataclass(frozen=True)
class InversionCrossCheck:
    """Both inverters evaluated at one time."""

    t: float
    stehfest: float
    talbot: float
    rtol: float

    @property
    def rel_diff(self) -> float:
        return abs(self.stehfest - self.talbot) / max(abs(self.talbot), 1e-300)

    @property
    def agrees(self) -> bool:
        return self.rel_diff <= self.rtol


def cross_check(
    F: Transform, t: float, settings: InversionSettings | None = None
) -> InversionCrossCheck:
    """Invert with both methods and report their relative difference."""
    settings = settings or DEFAULT_INVERSION
    check = InversionCrossCheck(
        t=t,
        stehfest=laplace_invert(F, t, "gaver_stehfest", settings),
        talbot=laplace_invert(F, t, "talbot", settings),
        rtol=settings.rtol,
    )
    if not check.agrees:
        logger.warning(
            "Laplace inverters disagree at t=%g: stehfest=%.12g talbot=%.12g",
            t, check.stehfest, check.talbot,
        )
    return check
