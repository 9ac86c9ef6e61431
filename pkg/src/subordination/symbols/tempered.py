"""Tempered (generalized) stable symbol Phi = (lambda + gamma)^alpha - gamma^alpha."""

import logging
import math
from typing import Any

import mpmath as mp
import numpy as np
from numpy.typing import NDArray
from scipy import special

from ..core.config import Family
from .base import SymbolMetadata, SymbolSpec, require_open_unit, require_positive
from .stable import positive_stable

logger = logging.getLogger(__name__)


def tempered_tail(z: NDArray[np.float64], alpha: float, gamma: float) -> NDArray[np.float64]:
    """Tail of the Levy measure alpha/Gamma(1-alpha) y^(-alpha-1) e^(-gamma y)."""
    head = np.power(z, -alpha) * np.exp(-gamma * z) / special.gamma(1.0 - alpha)
    values = head - gamma**alpha * special.gammaincc(1.0 - alpha, gamma * z)
    return np.maximum(values, 0.0)


def tempered_tail_primitive(
    z: NDArray[np.float64], alpha: float, gamma: float
) -> NDArray[np.float64]:
    """Integral of tempered_tail over (0, z)."""
    out = alpha * gamma ** (alpha - 1.0) * special.gammainc(1.0 - alpha, gamma * z)
    positive = z > 0
    out[positive] += z[positive] * tempered_tail(z[positive], alpha, gamma)
    return out


class TemperedStableSymbol(SymbolSpec):
    """Phi(lambda) = (lambda + gamma)^alpha - gamma^alpha."""

    family = Family.TEMPERED_STABLE

    def __init__(self, alpha: float, gamma: float) -> None:
        super().__init__(alpha=alpha, gamma=gamma)
        self.alpha = float(alpha)
        self.gamma = float(gamma)

    def _validate_params(self) -> None:
        require_open_unit("alpha", self._params["alpha"])
        require_positive("gamma", self._params["gamma"])

    @property
    def metadata(self) -> SymbolMetadata:
        return SymbolMetadata(
            name="tempered_stable",
            display_name="Tempered stable",
            description="Exponentially tilted alpha-stable subordinator",
            closed_form_tail=True,
            singularity_exponent=self._params["alpha"],
        )

    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.power(lam + self.gamma, self.alpha) - self.gamma**self.alpha

    def phi_mp(self, s: Any) -> Any:
        return mp.power(s + self.gamma, self.alpha) - mp.power(self.gamma, self.alpha)

    def phi_over_lambda_limit(self) -> float:
        return self.alpha * self.gamma ** (self.alpha - 1.0)

    def _tail(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return tempered_tail(z, self.alpha, self.gamma)

    def levy_density(self, z: float) -> float:
        return (
            self.alpha * z ** (-self.alpha - 1.0) * math.exp(-self.gamma * z)
            / special.gamma(1.0 - self.alpha)
        )

    def _tail_primitive(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return tempered_tail_primitive(z, self.alpha, self.gamma)

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        """Rejection from stable draws with acceptance weight exp(-gamma X).

        The step is split into substeps so that each has acceptance
        probability at least exp(-1).
        """
        substeps = max(1, math.ceil(ds * self.gamma**self.alpha))
        h = ds / substeps
        accept_rate = math.exp(-h * self.gamma**self.alpha)
        logger.debug("Tempered sampler: %d substeps, acceptance %.3f", substeps, accept_rate)

        total = np.zeros(size)
        for _ in range(substeps):
            total += self._rejection_draws(rng, h, size, accept_rate)
        return total

    def _rejection_draws(
        self, rng: np.random.Generator, h: float, size: int, accept_rate: float
    ) -> NDArray[np.float64]:
        out = np.empty(size)
        filled = 0
        while filled < size:
            need = size - filled
            batch = int(need / accept_rate * 1.1) + 16
            x = h ** (1.0 / self.alpha) * positive_stable(rng, self.alpha, batch)
            kept = x[rng.random(batch) < np.exp(-self.gamma * x)][:need]
            out[filled : filled + kept.size] = kept
            filled += kept.size
        return out
