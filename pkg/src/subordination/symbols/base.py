"""Base class and metadata for Bernstein symbols.

Defines the interface every symbol family implements: the Laplace
exponent Phi, its Levy tail, the tail primitive used for exact cell
integrals, and an optional increment sampler.
"""

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Hashable
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.config import Family, QuadratureSettings
from ..core.errors import CapabilityError, ParameterDomainError
from ..quadrature import integrate_quad

logger = logging.getLogger(__name__)

FloatOrArray = float | NDArray[np.float64]


@dataclass(frozen=True)
class SymbolMetadata:
    """Static description of a symbol family.

    Attributes:
        name: Family identifier
        display_name: Human-readable name
        description: Short description of the subordinator
        closed_form_tail: Whether Pi-bar has a closed form
        has_sampler: Whether increments can be sampled
        singularity_exponent: beta with Pi-bar(z) ~ z^-beta as z -> 0
    """

    name: str
    display_name: str
    description: str
    closed_form_tail: bool = False
    has_sampler: bool = True
    singularity_exponent: float = 0.0


def _wrap(values: NDArray[np.float64], scalar: bool) -> FloatOrArray:
    return float(values[()]) if scalar else values


class SymbolSpec(ABC):
    """Abstract Bernstein symbol with zero drift and zero killing.

    Instances are immutable after construction and safe to share across
    workers. Subclasses implement the family formulas on float arrays;
    the public methods handle scalar/array dispatch and domain checks.
    """

    family: Family

    killing: float = 0.0
    drift: float = 0.0

    def __init__(self, **params: float) -> None:
        self._params = dict(params)
        self._validate_params()

    # =========================================================================
    # Interface
    # =========================================================================

    @property
    @abstractmethod
    def metadata(self) -> SymbolMetadata:
        """Return family metadata."""

    @abstractmethod
    def _phi(self, lam: NDArray[np.float64]) -> NDArray[np.float64]:
        """Phi on a float array of nonnegative arguments."""

    @abstractmethod
    def phi_over_lambda_limit(self) -> float:
        """lim Phi(lambda)/lambda as lambda -> 0 (math.inf when infinite)."""

    def _validate_params(self) -> None:
        """Check family parameters; raise ParameterDomainError."""

    def _tail(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        """Closed-form Levy tail on z > 0."""
        raise CapabilityError(f"{self.metadata.name} has no closed-form tail")

    def levy_density(self, z: float) -> float:
        """Density of the Levy measure at z > 0."""
        raise CapabilityError(f"{self.metadata.name} has no Levy density")

    def _tail_primitive(self, z: NDArray[np.float64]) -> NDArray[np.float64] | None:
        """Closed-form integral of Pi-bar over (0, z), or None."""
        return None

    def phi_mp(self, s: Any) -> Any:
        """Phi at an mpmath (possibly complex) argument."""
        raise CapabilityError(
            f"{self.metadata.name} symbol cannot be evaluated at complex arguments",
            details={"family": self.family.value},
        )

    def sample_increments(
        self, rng: np.random.Generator, ds: float, size: int
    ) -> NDArray[np.float64]:
        """Draw independent increments H(s + ds) - H(s)."""
        raise CapabilityError(
            f"{self.metadata.name} symbol has no increment sampler",
            details={"family": self.family.value},
        )

    # =========================================================================
    # Public evaluation
    # =========================================================================

    @property
    def params(self) -> dict[str, float]:
        """Family parameters (copy)."""
        return self._params.copy()

    @property
    def key(self) -> Hashable:
        """Hashable identity used for weight-table caching."""
        return (self.family.value, tuple(sorted(self._params.items())))

    def phi(self, lam: ArrayLike) -> FloatOrArray:
        """Evaluate Phi(lambda) for lambda >= 0.

        Raises:
            ParameterDomainError: If any lambda is negative
        """
        arr = np.asarray(lam, dtype=np.float64)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise ParameterDomainError("phi requires lambda >= 0", details={"lambda": str(lam)})
        return _wrap(self._phi(arr), arr.ndim == 0)

    def tail(self, z: ArrayLike, mode: str = "closed_form",
             settings: QuadratureSettings | None = None) -> FloatOrArray:
        """Evaluate Pi-bar(z) = Pi((z, inf)) for z > 0.

        Args:
            z: Positive point(s)
            mode: "closed_form" or "quadrature" (integrates levy_density)
            settings: Quadrature tolerances

        Raises:
            ParameterDomainError: If any z <= 0
            NumericalToleranceError: If quadrature fails to converge
        """
        arr = np.asarray(z, dtype=np.float64)
        if np.any(~(arr > 0)):
            raise ParameterDomainError("Levy tail requires z > 0", details={"z": str(z)})
        if mode == "closed_form" and self.metadata.closed_form_tail:
            values = self._tail(arr)
        else:
            flat = [self._tail_by_quadrature(float(x), settings) for x in arr.ravel()]
            values = np.asarray(flat, dtype=np.float64).reshape(arr.shape)
        return _wrap(values, arr.ndim == 0)

    def _tail_by_quadrature(self, z: float, settings: QuadratureSettings | None) -> float:
        return integrate_quad(self.levy_density, z, math.inf, settings)

    def cell_integrals(
        self, edges: NDArray[np.float64], settings: QuadratureSettings | None = None
    ) -> NDArray[np.float64]:
        """Integrals of Pi-bar over consecutive cells [edges[i], edges[i+1]].

        Uses the tail primitive when the family has one; otherwise adaptive
        quadrature with an algebraic weight on a cell touching the origin.
        """
        edges = np.asarray(edges, dtype=np.float64)
        primitive = self._tail_primitive(edges)
        if primitive is not None:
            return np.diff(primitive)

        beta = self.metadata.singularity_exponent
        out = np.empty(edges.size - 1)
        for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
            if lo == 0.0 and beta > 0:
                out[i] = integrate_quad(
                    lambda y: float(self.tail(y)) * y**beta,
                    0.0,
                    float(hi),
                    settings,
                    weight="alg",
                    wvar=(-beta, 0.0),
                )
            else:
                out[i] = integrate_quad(lambda y: float(self.tail(y)), float(lo), float(hi), settings)
        return out

    def validate(self, grid: NDArray[np.float64] | None = None) -> None:
        """Sampled check of Phi(0) = 0, monotonicity and Phi/lambda decrease.

        Raises:
            ParameterDomainError: If the sampled grid violates an invariant
        """
        lam = np.logspace(-6, 6, 241) if grid is None else np.asarray(grid, dtype=np.float64)
        at_zero = float(self.phi(0.0))
        if abs(at_zero) > 1e-14:
            raise ParameterDomainError("Phi(0) must vanish", details={"phi(0)": at_zero})

        values = np.asarray(self.phi(lam))
        slack = 1e-12 * np.maximum(1.0, np.abs(values[1:]))
        if np.any(np.diff(values) < -slack):
            raise ParameterDomainError("Phi must be nondecreasing on lambda >= 0")

        ratio = values / lam
        slack = 1e-9 * np.maximum(1.0, np.abs(ratio[1:]))
        if np.any(np.diff(ratio) > slack):
            raise ParameterDomainError("Phi(lambda)/lambda must be nonincreasing")

    def describe(self) -> dict[str, Any]:
        """Metadata line entries for CSV headers and manifests."""
        return {"family": self.family.value, **self._params}

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in self._params.items())
        return f"{type(self).__name__}({inner})"


def require_positive(name: str, value: float) -> None:
    """Raise ParameterDomainError unless value > 0 and finite."""
    if not (math.isfinite(value) and value > 0):
        raise ParameterDomainError(f"{name} must be positive", details={name: value})


def require_open_unit(name: str, value: float) -> None:
    """Raise ParameterDomainError unless value lies in (0, 1)."""
    if not 0.0 < value < 1.0:
        raise ParameterDomainError(f"{name} must lie in (0, 1)", details={name: value})
