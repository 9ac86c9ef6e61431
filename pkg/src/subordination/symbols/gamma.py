"""Gamma symbol Phi(lambda) = a ln(1 + lambda/b)."""

import math
from typing import Any

import mpmath as mp
import numpy as np
from numpy.typing import NDArray
from scipy import special

from ..core.config import Family
from .base import SymbolMetadata, SymbolSpec, require_positive


class GammaSymbol(SymbolSpec):
    """Gamma subordinator: increments over ds are Gamma(a ds, rate b)."""

    family = Family.GAMMA

    def __init__(self, a: float, b: float) -> None:
        super().__init__(a=a, b=b)
        self.a = float(a)
        self.b = float(b)

    def _validate_params(self) -> None:
        require_positive("a", self._params["a"])
        require_positive("b", self._params["b"])

    @property
    def metadata(self) -> SymbolMetadata:
        return SymbolMetadata(
            name="gamma",
            display_name="Gamma",
            description="Gamma subordinator, logarithmic tail singularity",
            closed_form_tail=True,
            singularity_exponent=0.0,
        )

    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.a * np.log1p(lam / self.b)

    def phi_mp(self, s: Any) -> Any:
        return self.a * mp.log(1 + s / self.b)

    def phi_over_lambda_limit(self) -> float:
        return self.a / self.b

    def _tail(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.a * special.exp1(self.b * z)

    def levy_density(self, z: float) -> float:
        return self.a * math.exp(-self.b * z) / z

    def _tail_primitive(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        bz = self.b * z
        out = self.a * -np.expm1(-bz) / self.b
        positive = z > 0
        out[positive] += self.a * z[positive] * special.exp1(bz[positive])
        return out

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        return rng.gamma(shape=self.a * ds, scale=1.0 / self.b, size=size)
