"""User-supplied symbol built from evaluator callables."""

import itertools
import logging
import math
from collections.abc import Callable, Hashable, Sequence
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ..core.config import Family
from ..core.errors import CapabilityError, NumericalToleranceError, ParameterDomainError
from .base import SymbolMetadata, SymbolSpec
from .tail import TailKernel, check_laplace_consistency

logger = logging.getLogger(__name__)

_ids = itertools.count()


class CustomSymbol(SymbolSpec):
    """Symbol defined by callables for Phi and the Levy tail or density.

    Consistency between Phi and the tail is asserted at construction
    through the Laplace check. The small-lambda limit of Phi/lambda should
    be declared; if omitted it is inferred numerically and logged.

    Args:
        phi: Scalar evaluator of Phi on lambda >= 0
        limit: Declared lim Phi(lambda)/lambda (math.inf allowed)
        tail: Scalar evaluator of Pi-bar on z > 0
        density: Scalar Levy density, used when tail is missing
        tail_primitive: Vectorized integral of Pi-bar over (0, z)
        sampler: Callable(rng, ds, size) returning increments
        phi_mp: Evaluator at mpmath complex arguments (for Talbot inversion)
        singularity_exponent: beta with Pi-bar(z) ~ z^-beta near 0
        name: Label used in metadata and outputs
        check_lambdas: Points of the Laplace check
        rtol: Relative tolerance of the Laplace check
    """

    family = Family.CUSTOM

    def __init__(
        self,
        phi: Callable[[float], float],
        limit: float | None = None,
        *,
        tail: Callable[[float], float] | None = None,
        density: Callable[[float], float] | None = None,
        tail_primitive: Callable[[NDArray[np.float64]], NDArray[np.float64]] | None = None,
        sampler: Callable[[np.random.Generator, float, int], NDArray[np.float64]] | None = None,
        phi_mp: Callable[[Any], Any] | None = None,
        singularity_exponent: float = 0.0,
        name: str = "custom",
        check_lambdas: Sequence[float] = (1.0, 2.0, 5.0),
        rtol: float = 1e-4,
    ) -> None:
        super().__init__()
        if tail is None and density is None:
            raise ParameterDomainError("Custom symbol needs a tail or a Levy density")
        self._phi_fn = phi
        self._tail_fn = tail
        self._density_fn = density
        self._primitive_fn = tail_primitive
        self._sampler = sampler
        self._phi_mp_fn = phi_mp
        self._name = name
        self._id = next(_ids)
        self._metadata = SymbolMetadata(
            name=name,
            display_name=f"Custom ({name})",
            description="User-supplied Bernstein symbol",
            closed_form_tail=tail is not None,
            has_sampler=sampler is not None,
            singularity_exponent=singularity_exponent,
        )
        self._limit = self._resolve_limit(limit)

        self.validate()
        checks = check_laplace_consistency(TailKernel(self), check_lambdas)
        worst = max(checks, key=lambda c: c.rel_error)
        if worst.rel_error > rtol:
            raise NumericalToleranceError(
                "Custom tail is inconsistent with Phi",
                details={
                    "lambda": worst.lam,
                    "transform": worst.transform,
                    "phi_over_lambda": worst.expected,
                    "rtol": rtol,
                },
            )

    def _resolve_limit(self, declared: float | None) -> float:
        r_coarse = self._phi_fn(1e-8) / 1e-8
        r_fine = self._phi_fn(1e-10) / 1e-10
        if declared is None:
            inferred = math.inf if r_fine > 1.01 * r_coarse else r_fine
            logger.info("Inferred Phi/lambda limit of %s: %g", self._name, inferred)
            return inferred
        if math.isfinite(declared) and abs(r_fine - declared) > 1e-3 * max(1.0, abs(declared)):
            logger.warning(
                "Declared Phi/lambda limit %g of %s differs from Phi(1e-10)/1e-10 = %g",
                declared, self._name, r_fine,
            )
        return float(declared)

    @property
    def key(self) -> Hashable:
        return (self.family.value, self._name, self._id)

    @property
    def metadata(self) -> SymbolMetadata:
        return self._metadata

    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.vectorize(self._phi_fn, otypes=[np.float64])(lam)

    def phi_mp(self, s: Any) -> Any:
        if self._phi_mp_fn is None:
            return super().phi_mp(s)
        return self._phi_mp_fn(s)

    def phi_over_lambda_limit(self) -> float:
        return self._limit

    def _tail(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        assert self._tail_fn is not None
        return np.vectorize(self._tail_fn, otypes=[np.float64])(z)

    def levy_density(self, z: float) -> float:
        if self._density_fn is None:
            return super().levy_density(z)
        return float(self._density_fn(z))

    def _tail_primitive(self, z: NDArray[np.float64]) -> NDArray[np.float64] | None:
        if self._primitive_fn is None:
            return None
        return np.asarray(self._primitive_fn(z), dtype=np.float64)

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        if self._sampler is None:
            raise CapabilityError(
                f"Custom symbol {self._name} has no increment sampler",
                details={"family": self.family.value},
            )
        return np.asarray(self._sampler(rng, ds, size), dtype=np.float64)

    def describe(self) -> dict[str, Any]:
        return {"family": self.family.value, "name": self._name}
