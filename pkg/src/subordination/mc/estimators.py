"""Monte Carlo estimators of functionals of the inverse subordinator."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ParameterDomainError
from ..solver.grid import GridFunction
from ..symbols.base import SymbolSpec
from .sampler import SamplerSettings, sample_inverse_times, sample_stieltjes

logger = logging.getLogger(__name__)

Functional = Callable[[NDArray[np.float64]], ArrayLike]


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its spread.

    Attributes:
        mean: Sample mean
        sample_variance: Unbiased sample variance (ddof = 1)
        stderr: sqrt(sample_variance / n)
        n: Number of replications
        seed: Master seed of the random streams
    """

    mean: float
    sample_variance: float
    stderr: float
    n: int
    seed: int

    @classmethod
    def from_samples(cls, samples: ArrayLike, seed: int) -> "Estimate":
        x = np.asarray(samples, dtype=np.float64)
        if x.size < 2:
            raise ParameterDomainError("An estimate needs at least two samples")
        var = float(np.var(x, ddof=1))
        return cls(float(np.mean(x)), var, math.sqrt(var / x.size), int(x.size), seed)

    def interval(self, z: float = 1.96) -> tuple[float, float]:
        """Normal-approximation confidence interval."""
        return self.mean - z * self.stderr, self.mean + z * self.stderr

    def to_dict(self) -> dict[str, Any]:
        return {
            "mean": self.mean,
            "sample_variance": self.sample_variance,
            "stderr": self.stderr,
            "n": self.n,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class VarianceTable:
    """u_hat(t) = E[v(L_t)] and sigma_hat(t) = Var[v(L_t)] on one time grid.

    Both tables come from the same paths.
    """

    u_hat: GridFunction
    sigma_hat: GridFunction
    stderr_u: NDArray[np.float64]
    stderr_sigma: NDArray[np.float64]
    n: int
    seed: int

    @property
    def t_grid(self) -> NDArray[np.float64]:
        return self.u_hat.t_grid


def _values(v: Functional, L: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.broadcast_to(np.asarray(v(L), dtype=np.float64), L.shape)


def estimate_functional(
    spec: SymbolSpec,
    v: Functional,
    t: float,
    n: int,
    seed: int,
    settings: SamplerSettings | None = None,
) -> Estimate:
    """Estimate u(t) = E[v(L_t)]."""
    L = sample_inverse_times(spec, [t], n, seed, settings)[:, 0]
    est = Estimate.from_samples(_values(v, L), seed)
    logger.info("E[v(L_%g)] = %.6g +- %.2g (n=%d)", t, est.mean, est.stderr, n)
    return est


def variance_stderr(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Standard error of the unbiased sample variance, column-wise."""
    n = x.shape[0]
    centered = x - x.mean(axis=0)
    m2 = np.mean(centered**2, axis=0)
    m4 = np.mean(centered**4, axis=0)
    var = m4 - m2**2 * (n - 3) / (n - 1)
    return np.sqrt(np.maximum(var, 0.0) / n)


def estimate_variance_sigma(
    spec: SymbolSpec,
    v: Functional,
    t_grid: ArrayLike,
    n: int,
    seed: int,
    settings: SamplerSettings | None = None,
) -> VarianceTable:
    """Tabulate the mean and variance of v(L_t) on a uniform grid starting at 0.

    sigma_hat is the forcing term of the non-local problem satisfied by the
    mean û.
    """
    t = np.asarray(t_grid, dtype=np.float64)
    if t.size < 2 or t[0] != 0.0:
        raise ParameterDomainError("The time grid must start at 0 and hold two points")
    dt = float(t[1] - t[0])
    if not np.allclose(np.diff(t), dt, rtol=1e-9, atol=0.0):
        raise ParameterDomainError("The time grid must be uniform")

    samples = _values(v, sample_inverse_times(spec, t, n, seed, settings))
    mean = samples.mean(axis=0)
    var = samples.var(axis=0, ddof=1)
    stderr_u = np.sqrt(var / n)
    return VarianceTable(
        u_hat=GridFunction(dt, mean),
        sigma_hat=GridFunction(dt, var),
        stderr_u=stderr_u,
        stderr_sigma=variance_stderr(samples),
        n=n,
        seed=seed,
    )


def estimate_restricted(
    spec: SymbolSpec,
    v: Functional,
    t: float,
    r: float,
    n: int,
    seed: int,
    settings: SamplerSettings | None = None,
) -> Estimate:
    """Estimate E[v(L_t); L_t < r], the mean restricted to {t < H_r}."""
    if r <= 0:
        raise ParameterDomainError("Restriction level must be positive", details={"r": r})
    L = sample_inverse_times(spec, [t], n, seed, settings)[:, 0]
    return Estimate.from_samples(np.where(L < r, _values(v, L), 0.0), seed)


def estimate_potential_integral(
    spec: SymbolSpec,
    v: Functional,
    T: float,
    n: int,
    seed: int,
    settings: SamplerSettings | None = None,
) -> Estimate:
    """Estimate int_0^inf E[v(L_t); L_t < T] dt through int_0^T v(s) dH_s.

    The expectation equals (lim Phi(lambda)/lambda) int_0^T v(s) ds; it is
    infinite for a nonzero v under the stable family.
    """
    if T <= 0:
        raise ParameterDomainError("Horizon must be positive", details={"T": T})
    return Estimate.from_samples(sample_stieltjes(spec, v, T, n, seed, settings), seed)
