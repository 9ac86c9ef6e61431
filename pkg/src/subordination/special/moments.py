"""Rescaled moments phi_k(t) = E[L_t^k] / k! of the inverse subordinator.

phi_k has Laplace transform 1 / (lambda Phi(lambda)^k). Closed forms exist
for the identity (t^k / k!) and stable (t^(alpha k) / Gamma(alpha k + 1))
families; the other families are inverted numerically.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any

import mpmath as mp
import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from ..core.config import Family, InversionSettings
from ..core.errors import CapabilityError, ParameterDomainError
from ..core.threading import parallel_map
from ..symbols.base import SymbolSpec
from .laplace import DEFAULT_INVERSION, Transform, laplace_invert

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MomentLadder:
    """phi_k tabulated on a time grid."""

    spec: SymbolSpec
    k: int
    t_grid: NDArray[np.float64]
    values: NDArray[np.float64]


def moment_transform(spec: SymbolSpec, k: int, method: str) -> Transform:
    """Laplace transform lambda -> 1 / (lambda Phi(lambda)^k) on mpmath numbers."""
    try:
        spec.phi_mp(mp.mpf(1))
        phi_mp = spec.phi_mp
    except CapabilityError:
        if method == "talbot":
            raise
        logger.debug("Falling back to float Phi for %s", spec.metadata.name)

        def phi_mp(s: Any) -> Any:
            return mp.mpf(float(spec.phi(float(s))))

    def transform(s: Any) -> Any:
        return 1 / (s * phi_mp(s) ** k)

    return transform


def _closed_form(spec: SymbolSpec, k: int, t: float) -> float | None:
    if spec.family == Family.IDENTITY:
        return t**k / math.factorial(k)
    if spec.family == Family.STABLE:
        alpha = spec.params["alpha"]
        return t ** (alpha * k) * float(special.rgamma(alpha * k + 1.0))
    return None


def moment_phi_k(
    spec: SymbolSpec,
    k: int,
    t: float,
    method: str | None = None,
    settings: InversionSettings | None = None,
) -> float:
    """Rescaled moment phi_k(t) = E[L_t^k] / k!.

    Args:
        spec: Symbol of the subordinator
        k: Order >= 0
        t: Time >= 0 (phi_0 = 1, phi_k(0) = 0 for k >= 1)
        method: Inverter for families without a closed form
        settings: Inversion settings

    Raises:
        ParameterDomainError: If k < 0 or t < 0
        NumericalToleranceError: If the inversion is unstable
    """
    if k < 0:
        raise ParameterDomainError("Moment order must be nonnegative", details={"k": k})
    if t < 0:
        raise ParameterDomainError("t must be nonnegative", details={"t": t})
    if k == 0:
        return 1.0
    if t == 0:
        return 0.0
    closed = _closed_form(spec, k, t)
    if closed is not None:
        return closed
    settings = settings or DEFAULT_INVERSION
    method = method or settings.method
    return laplace_invert(moment_transform(spec, k, method), t, method, settings)


def moment_ladder(
    spec: SymbolSpec,
    k: int,
    t_grid: ArrayLike,
    method: str | None = None,
    settings: InversionSettings | None = None,
    threads: int | None = None,
) -> MomentLadder:
    """Tabulate phi_k on a time grid (points evaluated concurrently)."""
    t = np.asarray(t_grid, dtype=np.float64)
    values = parallel_map(lambda ti: moment_phi_k(spec, k, float(ti), method, settings), list(t), threads)
    return MomentLadder(spec, k, t, np.asarray(values, dtype=np.float64))


def phi_k_table(
    spec: SymbolSpec,
    K: int,
    t_grid: ArrayLike,
    dps: int = 40,
    settings: InversionSettings | None = None,
) -> Any:
    """phi_0..phi_K on t_grid as an mpmath matrix (rows t, columns k).

    Closed-form families are evaluated at `dps` digits; the other families
    are inverted with Talbot, whose accuracy bounds the table's.
    """
    t = [mp.mpf(float(v)) for v in np.asarray(t_grid, dtype=np.float64)]
    settings = settings or DEFAULT_INVERSION
    with mp.workdps(dps):
        table = mp.matrix(len(t), K + 1)
        for i, ti in enumerate(t):
            for k in range(K + 1):
                table[i, k] = _phi_k_mp(spec, k, ti, settings)
    return table


def _phi_k_mp(spec: SymbolSpec, k: int, t: Any, settings: InversionSettings) -> Any:
    if k == 0:
        return mp.mpf(1)
    if t == 0:
        return mp.mpf(0)
    if spec.family == Family.IDENTITY:
        return t**k / mp.factorial(k)
    if spec.family == Family.STABLE:
        a = mp.mpf(spec.params["alpha"])
        return t ** (a * k) * mp.rgamma(a * k + 1)
    method = "talbot"
    try:
        spec.phi_mp(mp.mpf(1))
    except CapabilityError:
        method = "gaver_stehfest"
    return mp.mpf(laplace_invert(moment_transform(spec, k, method), float(t), method, settings))
