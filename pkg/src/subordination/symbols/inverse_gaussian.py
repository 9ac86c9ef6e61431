"""Inverse Gaussian symbol Phi = sigma^-2 (sqrt(2 lambda sigma^2 + mu^2) - mu).

Phi equals kappa ((lambda + c)^(1/2) - c^(1/2)) with kappa = sqrt(2)/|sigma|
and c = mu^2 / (2 sigma^2), so the tail is a scaled tempered-stable tail
with index one half.
"""

import math
from typing import Any

import mpmath as mp
import numpy as np
from numpy.typing import NDArray

from ..core.config import Family
from ..core.errors import ParameterDomainError
from .base import SymbolMetadata, SymbolSpec, require_positive
from .tempered import tempered_tail, tempered_tail_primitive


class InverseGaussianSymbol(SymbolSpec):
    """Inverse Gaussian subordinator with E[H_s] = s / mu."""

    family = Family.INVERSE_GAUSSIAN

    def __init__(self, sigma: float, mu: float) -> None:
        super().__init__(sigma=sigma, mu=mu)
        self.sigma = float(sigma)
        self.mu = float(mu)
        self._kappa = math.sqrt(2.0) / abs(self.sigma)
        self._c = self.mu**2 / (2.0 * self.sigma**2)

    def _validate_params(self) -> None:
        sigma = self._params["sigma"]
        if sigma == 0 or not math.isfinite(sigma):
            raise ParameterDomainError("sigma must be nonzero", details={"sigma": sigma})
        require_positive("mu", self._params["mu"])

    @property
    def metadata(self) -> SymbolMetadata:
        return SymbolMetadata(
            name="inverse_gaussian",
            display_name="Inverse Gaussian",
            description="First-passage subordinator of Brownian motion with drift",
            closed_form_tail=True,
            singularity_exponent=0.5,
        )

    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        s2 = self.sigma**2
        return (np.sqrt(2.0 * lam * s2 + self.mu**2) - self.mu) / s2

    def phi_mp(self, s: Any) -> Any:
        s2 = self.sigma**2
        return (mp.sqrt(2 * s * s2 + self.mu**2) - self.mu) / s2

    def phi_over_lambda_limit(self) -> float:
        return 1.0 / self.mu

    def _tail(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return self._kappa * tempered_tail(z, 0.5, self._c)

    def levy_density(self, z: float) -> float:
        return self._kappa * 0.5 * z**-1.5 * math.exp(-self._c * z) / math.sqrt(math.pi)

    def _tail_primitive(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return self._kappa * tempered_tail_primitive(z, 0.5, self._c)

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        return rng.wald(mean=ds / self.mu, scale=ds**2 / self.sigma**2, size=size)
