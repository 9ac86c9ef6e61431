"""Stable symbol Phi(lambda) = lambda^alpha.

Provides:
- Closed-form Levy tail z^-alpha / Gamma(1 - alpha) and its primitive
- Positive-stable increments via Kanter's representation
"""

import math
from typing import Any

import mpmath as mp
import numpy as np
from numpy.typing import NDArray
from scipy import special

from ..core.config import Family
from .base import SymbolMetadata, SymbolSpec, require_open_unit


def positive_stable(rng: np.random.Generator, alpha: float, size: int) -> NDArray[np.float64]:
    """Draw S with E[exp(-lambda S)] = exp(-lambda^alpha).

    Kanter's representation with U uniform on (0, pi] and E ~ Exp(1).
    """
    u = math.pi * (1.0 - rng.random(size))
    e = rng.standard_exponential(size)
    a = np.sin(alpha * u) / np.sin(u) ** (1.0 / alpha)
    b = (np.sin((1.0 - alpha) * u) / e) ** ((1.0 - alpha) / alpha)
    return a * b


class StableSymbol(SymbolSpec):
    """Phi(lambda) = lambda^alpha with alpha in (0, 1)."""

    family = Family.STABLE

    def __init__(self, alpha: float) -> None:
        super().__init__(alpha=alpha)
        self.alpha = float(alpha)

    def _validate_params(self) -> None:
        require_open_unit("alpha", self._params["alpha"])

    @property
    def metadata(self) -> SymbolMetadata:
        return SymbolMetadata(
            name="stable",
            display_name="Stable",
            description="alpha-stable subordinator, Caputo-Djrbashian derivative",
            closed_form_tail=True,
            singularity_exponent=self._params["alpha"],
        )

    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.power(lam, self.alpha)

    def phi_mp(self, s: Any) -> Any:
        return mp.power(s, self.alpha)

    def phi_over_lambda_limit(self) -> float:
        return math.inf

    def _tail(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.power(z, -self.alpha) / special.gamma(1.0 - self.alpha)

    def levy_density(self, z: float) -> float:
        return self.alpha * z ** (-self.alpha - 1.0) / special.gamma(1.0 - self.alpha)

    def _tail_primitive(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.power(z, 1.0 - self.alpha) / special.gamma(2.0 - self.alpha)

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        return ds ** (1.0 / self.alpha) * positive_stable(rng, self.alpha, size)
