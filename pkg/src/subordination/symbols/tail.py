"""Levy tail kernels and derived scalar functionals.

Provides:
- TailKernel: a symbol's tail Pi-bar with a fixed evaluation mode and a
  cache of tabulated grid values
- phi, phi_over_lambda_limit, levy_tail: the module-level operations
- check_laplace_consistency: residual of the identity
  integral of exp(-lambda z) Pi-bar(z) dz = Phi(lambda)/lambda
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.config import Family, QuadratureSettings
from ..core.errors import FamilyMismatchError, ParameterDomainError
from ..core.threading import ThreadSafeDict
from ..quadrature import integrate_quad
from .base import FloatOrArray, SymbolSpec

logger = logging.getLogger(__name__)


class TailMode(str, Enum):
    """How Pi-bar is evaluated."""

    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class TailKernel:
    """Levy tail of a symbol bound to an evaluation mode.

    CLOSED_FORM falls back to quadrature of the Levy density for families
    without a closed form; QUADRATURE always integrates the density.
    """

    spec: SymbolSpec
    eval_mode: TailMode = TailMode.CLOSED_FORM
    settings: QuadratureSettings | None = None
    _cache: ThreadSafeDict[tuple[int, int], NDArray[np.float64]] = field(
        default_factory=ThreadSafeDict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.spec.family == Family.IDENTITY:
            raise FamilyMismatchError(
                "Identity symbol is a pure drift and has no Levy tail",
                details={"family": self.spec.family.value},
            )
        object.__setattr__(self, "eval_mode", TailMode(self.eval_mode))

    def __call__(self, z: ArrayLike) -> FloatOrArray:
        return self.spec.tail(z, self.eval_mode.value, self.settings)

    def on_grid(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        """Tabulate Pi-bar on a grid of positive points (cached, read-only)."""
        z = np.ascontiguousarray(z, dtype=np.float64)
        key = (z.size, hash(z.tobytes()))

        def compute() -> NDArray[np.float64]:
            values = np.asarray(self(z), dtype=np.float64)
            values.setflags(write=False)
            return values

        return self._cache.get_or_compute(key, compute)


@dataclass(frozen=True)
class LaplaceCheck:
    """One point of the Laplace consistency check."""

    lam: float
    transform: float
    expected: float

    @property
    def rel_error(self) -> float:
        return abs(self.transform - self.expected) / abs(self.expected)


# =============================================================================
# Operations
# =============================================================================


def phi(spec: SymbolSpec, lam: ArrayLike) -> FloatOrArray:
    """Evaluate the Laplace exponent Phi(lambda), lambda >= 0."""
    return spec.phi(lam)


def phi_over_lambda_limit(spec: SymbolSpec) -> float:
    """Return lim Phi(lambda)/lambda as lambda -> 0 (math.inf if infinite)."""
    return spec.phi_over_lambda_limit()


def levy_tail(kernel: TailKernel, z: ArrayLike) -> FloatOrArray:
    """Evaluate Pi-bar(z) = Pi((z, inf)) for z > 0.

    Raises:
        ParameterDomainError: If z <= 0
        NumericalToleranceError: If quadrature of the density fails
    """
    if np.any(~(np.asarray(z, dtype=np.float64) > 0)):
        raise ParameterDomainError("Levy tail requires z > 0", details={"z": str(z)})
    return kernel(z)


def laplace_of_tail(kernel: TailKernel, lam: float) -> float:
    """Integral of exp(-lambda z) Pi-bar(z) over (0, inf)."""
    if lam <= 0:
        raise ParameterDomainError("Laplace check requires lambda > 0", details={"lambda": lam})
    beta = kernel.spec.metadata.singularity_exponent
    settings = kernel.settings

    def regular(z: float) -> float:
        return float(kernel(z)) * math.exp(-lam * z)

    if beta > 0:
        head = integrate_quad(
            lambda z: regular(z) * z**beta, 0.0, 1.0, settings, weight="alg", wvar=(-beta, 0.0)
        )
    else:
        head = integrate_quad(regular, 0.0, 1.0, settings)
    return head + integrate_quad(regular, 1.0, math.inf, settings)


def check_laplace_consistency(
    kernel: TailKernel, lambdas: ArrayLike = (1.0, 2.0, 5.0)
) -> list[LaplaceCheck]:
    """Compare the Laplace transform of Pi-bar with Phi(lambda)/lambda.

    Returns:
        One LaplaceCheck per lambda
    """
    checks = []
    for lam in np.atleast_1d(np.asarray(lambdas, dtype=np.float64)):
        expected = float(kernel.spec.phi(lam)) / lam
        check = LaplaceCheck(float(lam), laplace_of_tail(kernel, float(lam)), expected)
        logger.debug(
            "Laplace check lambda=%g: transform=%.12g expected=%.12g",
            lam, check.transform, check.expected,
        )
        checks.append(check)
    return checks
