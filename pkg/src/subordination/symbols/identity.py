"""Identity symbol Phi(lambda) = lambda.

Pure drift: H(s) = s and L(t) = t, so the non-local derivative reduces to
the ordinary derivative. Kept as the classical benchmark family.
"""

from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.config import Family, QuadratureSettings
from ..core.errors import FamilyMismatchError
from .base import FloatOrArray, SymbolMetadata, SymbolSpec


class IdentitySymbol(SymbolSpec):
    """Phi(lambda) = lambda (drift one, no jumps)."""

    family = Family.IDENTITY
    drift = 1.0

    @property
    def metadata(self) -> SymbolMetadata:
        return SymbolMetadata(
            name="identity",
            display_name="Identity (pure drift)",
            description="Classical time, ordinary derivative",
            closed_form_tail=False,
        )

    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        return lam.copy()

    def phi_mp(self, s: Any) -> Any:
        return s

    def phi_over_lambda_limit(self) -> float:
        return 1.0

    def tail(self, z: ArrayLike, mode: str = "closed_form",
             settings: QuadratureSettings | None = None) -> FloatOrArray:
        raise FamilyMismatchError(
            "Identity symbol is a pure drift and has no Levy tail",
            details={"family": self.family.value},
        )

    def cell_integrals(
        self, edges: NDArray[np.float64], settings: QuadratureSettings | None = None
    ) -> NDArray[np.float64]:
        raise FamilyMismatchError(
            "Identity symbol is a pure drift and has no Levy tail",
            details={"family": self.family.value},
        )

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        return np.full(size, ds)
