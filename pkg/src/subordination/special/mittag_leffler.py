"""One-parameter Mittag-Leffler function E_alpha(z) for real z.

Series summation for |z| <= 1 (and positive z), an integral
representation for z < -1. Target absolute accuracy 1e-10.
"""

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from ..core.config import QuadratureSettings
from ..core.errors import NumericalToleranceError, ParameterDomainError
from ..quadrature import integrate_quad
from ..symbols.base import FloatOrArray

SERIES_SWITCH = 1.0

_INTEGRAL_QUADRATURE = QuadratureSettings(epsabs=1e-13, epsrel=1e-12, limit=400)
_MAX_TERMS = 20_000
_LOG_MAX = math.log(np.finfo(np.float64).max)


def _series(alpha: float, z: float) -> float:
    log_z = math.log(abs(z))
    sign = -1.0 if z < 0.0 else 1.0
    total = 1.0
    for k in range(1, _MAX_TERMS):
        term = sign**k * math.exp(k * log_z - special.gammaln(alpha * k + 1.0))
        total += term
        if k > 2 and abs(term) < 1e-17 * max(1.0, abs(total)):
            return total
    raise NumericalToleranceError(
        "Mittag-Leffler series did not converge",
        details={"alpha": alpha, "z": z, "terms": _MAX_TERMS},
    )


def _negative_integral(alpha: float, x: float) -> float:
    """E_alpha(-x), x > 0, 0 < alpha < 1, via the Laplace-type integral.

    With X = x^(1/alpha) and rho = (u/X)^alpha:
    E_alpha(-x) = sin(alpha pi)/(pi x) * int u^(alpha-1) e^-u / (rho^2 + 2 rho cos(alpha pi) + 1) du
    """
    big_x = x ** (1.0 / alpha)
    cos_ap = math.cos(alpha * math.pi)

    def kernel(u: float) -> float:
        rho = (u / big_x) ** alpha
        return math.exp(-u) / (rho * rho + 2.0 * rho * cos_ap + 1.0)

    head = integrate_quad(
        kernel, 0.0, big_x, _INTEGRAL_QUADRATURE, weight="alg", wvar=(alpha - 1.0, 0.0)
    )
    rest = integrate_quad(
        lambda u: u ** (alpha - 1.0) * kernel(u), big_x, math.inf, _INTEGRAL_QUADRATURE
    )
    return math.sin(alpha * math.pi) / (math.pi * x) * (head + rest)


def ml_method(alpha: float, z: float) -> str:
    """Name of the evaluation route taken for E_alpha(z)."""
    if z == 0.0:
        return "exact"
    if alpha == 1.0:
        return "exp"
    return "series" if z >= -SERIES_SWITCH else "integral"


def _ml_scalar(alpha: float, z: float) -> float:
    if z == 0.0:
        return 1.0
    if z > 0.0 and z ** (1.0 / alpha) > _LOG_MAX + math.log(alpha) - 1.0:
        raise NumericalToleranceError(
            "Mittag-Leffler value exceeds double precision",
            details={"alpha": alpha, "z": z},
        )
    if alpha == 1.0:
        return math.exp(z)
    if z >= -SERIES_SWITCH:
        return _series(alpha, z)
    return _negative_integral(alpha, -z)


def mittag_leffler(alpha: float, z: ArrayLike) -> FloatOrArray:
    """Evaluate E_alpha(z) = sum z^k / Gamma(alpha k + 1).

    Args:
        alpha: Index in (0, 1]
        z: Real argument(s); negative arguments are the primary use

    Raises:
        ParameterDomainError: If alpha is outside (0, 1]
        NumericalToleranceError: If a positive argument overflows double precision
    """
    if not 0.0 < alpha <= 1.0:
        raise ParameterDomainError("Mittag-Leffler index must lie in (0, 1]", details={"alpha": alpha})
    arr = np.asarray(z, dtype=np.float64)
    if arr.ndim == 0:
        return _ml_scalar(alpha, float(arr))
    return np.array([_ml_scalar(alpha, float(v)) for v in arr.ravel()]).reshape(arr.shape)
