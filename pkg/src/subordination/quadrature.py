"""Adaptive quadrature wrapper with tolerance enforcement.

Wraps scipy.integrate.quad so that non-convergence surfaces as a
NumericalToleranceError carrying diagnostics instead of a warning.
"""

import logging
import math
import warnings
from collections.abc import Callable
from typing import Any

from scipy import integrate

from .core.config import QuadratureSettings
from .core.errors import NumericalToleranceError

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureSettings()


def integrate_quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    settings: QuadratureSettings | None = None,
    **quad_kwargs: Any,
) -> float:
    """Integrate func over (a, b) and enforce the configured tolerance.

    Args:
        func: Scalar integrand
        a: Lower limit
        b: Upper limit (may be math.inf)
        settings: Tolerances (defaults to QuadratureSettings())
        **quad_kwargs: Passed to scipy.integrate.quad (weight, wvar, points)

    Returns:
        Integral value

    Raises:
        NumericalToleranceError: If quad reports failure or the error
            estimate exceeds the tolerance
    """
    settings = settings or DEFAULT_QUADRATURE
    if a == b:
        return 0.0

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        result = integrate.quad(
            func,
            a,
            b,
            epsabs=settings.epsabs,
            epsrel=settings.epsrel,
            limit=settings.limit,
            full_output=1,
            **quad_kwargs,
        )

    value, abserr = float(result[0]), float(result[1])
    tolerance = max(settings.epsabs, settings.epsrel * abs(value))
    failed = len(result) > 3 and abserr > tolerance
    if failed or not math.isfinite(value) or abserr > 100 * tolerance:
        raise NumericalToleranceError(
            "Adaptive quadrature did not converge",
            details={
                "lower": a,
                "upper": b,
                "value": value,
                "abserr": abserr,
                "tolerance": tolerance,
                "message": result[3] if len(result) > 3 else "",
            },
        )
    return value
