"""Fractional binomial coefficients and fractional Euler numbers.

The coefficients E_k of the series u(t) = sum_k E_k phi_k(t) solving the
non-local logistic equation satisfy

    E_0 = u0,  E_1 = u0 (1 - u0),
    E_{k+1} = E_k - sum_{i=0}^{k} [k i]_alpha E_i E_{k-i},

with [k i]_alpha = Gamma(alpha k + 1) / (Gamma(alpha i + 1) Gamma(alpha (k - i) + 1)).
At alpha = 1 this is the Taylor recursion of the logistic curve.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from ..core.errors import CoefficientRangeError, ParameterDomainError

logger = logging.getLogger(__name__)


class SeriesKind(str, Enum):
    """Origin of a coefficient sequence."""

    CLASSICAL_EULER = "classical_euler"
    FRAC_EULER_ALPHA = "frac_euler_alpha"
    GEOMETRIC = "geometric"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficient sequence E_0..E_K with its generating metadata.

    Attributes:
        kind: How the sequence was generated
        values: E_0..E_K (read-only)
        alpha: Index of the fractional recursion, None for custom data
        u0: Initial datum of Euler kinds
        meta: Extra generating parameters echoed into outputs
    """

    kind: SeriesKind
    values: NDArray[np.float64]
    alpha: float | None = None
    u0: float | None = None
    meta: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        values.setflags(write=False)
        if self.kind in (SeriesKind.CLASSICAL_EULER, SeriesKind.FRAC_EULER_ALPHA):
            assert self.u0 is not None
            if values[0] != self.u0 or values[1] != self.u0 * (1.0 - self.u0):
                raise ParameterDomainError(
                    "Euler coefficients must start with u0, u0 (1 - u0)",
                    details={"E0": float(values[0]), "E1": float(values[1]), "u0": self.u0},
                )

    @property
    def K(self) -> int:
        return self.values.size - 1

    def describe(self) -> dict[str, object]:
        out: dict[str, object] = {"kind": self.kind.value, "K": self.K}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.u0 is not None:
            out["u0"] = self.u0
        out.update(self.meta)
        return out


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise ParameterDomainError("alpha must lie in (0, 1]", details={"alpha": alpha})


def frac_binom(alpha: float, k: int, i: int) -> float:
    """Fractional binomial coefficient [k i]_alpha.

    Raises:
        ParameterDomainError: If i is outside [0, k] or alpha outside (0, 1]
    """
    _check_alpha(alpha)
    if not 0 <= i <= k:
        raise ParameterDomainError("frac_binom requires 0 <= i <= k", details={"k": k, "i": i})
    if alpha == 1.0:
        return float(math.comb(k, i))
    log_value = (
        special.gammaln(alpha * k + 1.0)
        - special.gammaln(alpha * i + 1.0)
        - special.gammaln(alpha * (k - i) + 1.0)
    )
    return float(np.exp(log_value))


def _binom_row(alpha: float, k: int) -> NDArray[np.float64]:
    i = np.arange(k + 1, dtype=np.float64)
    if alpha == 1.0:
        return np.array([math.comb(k, int(j)) for j in i], dtype=np.float64)
    logs = (
        special.gammaln(alpha * k + 1.0)
        - special.gammaln(alpha * i + 1.0)
        - special.gammaln(alpha * (k - i) + 1.0)
    )
    row = np.exp(logs)
    # exact symmetry i <-> k - i
    return 0.5 * (row + row[::-1])


def frac_euler_numbers(
    alpha: float, u0: float, K: int, start_at_one: bool = False
) -> SeriesCoefficients:
    """Generate E_0..E_K by the fractional Euler recursion.

    Args:
        alpha: Index in (0, 1]
        u0: Initial datum in (0, 1)
        K: Highest order, >= 1
        start_at_one: Start the convolution sum at i = 1 instead of i = 0

    Raises:
        ParameterDomainError: On invalid arguments
        CoefficientRangeError: If a coefficient overflows
    """
    _check_alpha(alpha)
    if not 0.0 < u0 < 1.0:
        raise ParameterDomainError("u0 must lie in (0, 1)", details={"u0": u0})
    if K < 1:
        raise ParameterDomainError("K must be at least 1", details={"K": K})

    E = np.zeros(K + 1)
    E[0] = u0
    E[1] = u0 * (1.0 - u0)
    start = 1 if start_at_one else 0
    for k in range(1, K):
        row = _binom_row(alpha, k)
        conv = float(np.dot(row[start:], E[start : k + 1] * E[k - start :: -1][: k + 1 - start]))
        E[k + 1] = E[k] - conv
        if not math.isfinite(E[k + 1]):
            raise CoefficientRangeError(
                "Fractional Euler coefficient overflowed",
                details={"alpha": alpha, "u0": u0, "k": k + 1, "suggestion": "lower K"},
            )

    kind = SeriesKind.CLASSICAL_EULER if alpha == 1.0 else SeriesKind.FRAC_EULER_ALPHA
    logger.debug("Generated %d Euler coefficients (alpha=%g, u0=%g)", K + 1, alpha, u0)
    return SeriesCoefficients(
        kind, E, alpha=alpha, u0=u0, meta={"start_at_one": start_at_one} if start_at_one else {}
    )


def geometric_coefficients(a: float, K: int, alpha: float = 1.0) -> SeriesCoefficients:
    """E_k = (-a)^k; with stable phi_k the series sums to E_alpha(-a t^alpha)."""
    _check_alpha(alpha)
    return SeriesCoefficients(
        SeriesKind.GEOMETRIC, (-a) ** np.arange(K + 1, dtype=np.float64), alpha=alpha,
        meta={"a": a},
    )


def custom_coefficients(values: ArrayLike, alpha: float | None = None) -> SeriesCoefficients:
    """Wrap user data as a coefficient sequence."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size < 1:
        raise ParameterDomainError("Coefficients must be a nonempty 1-D sequence")
    return SeriesCoefficients(SeriesKind.CUSTOM, values, alpha=alpha)
