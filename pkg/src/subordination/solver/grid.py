"""Grid functions and non-local Cauchy problems on uniform time grids."""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ParameterDomainError
from ..symbols.base import SymbolSpec

Rhs = Callable[[float], float]


def uniform_grid(T: float, dt: float) -> NDArray[np.float64]:
    """Grid 0, dt, ..., T; T must be a multiple of dt.

    Raises:
        ParameterDomainError: If dt <= 0, T <= 0 or T/dt is not an integer
    """
    if not (dt > 0 and T > 0):
        raise ParameterDomainError("Grid needs T > 0 and dt > 0", details={"T": T, "dt": dt})
    n = int(round(T / dt))
    if n < 1 or abs(n * dt - T) > 1e-9 * T:
        raise ParameterDomainError("T must be a multiple of dt", details={"T": T, "dt": dt})
    return np.arange(n + 1) * dt


@dataclass(frozen=True)
class GridFunction:
    """Values of a scalar function on t_j = j dt, j = 0..N.

    Attributes:
        dt: Grid step
        values: Finite values (read-only)
        initial: u(0), recorded separately from values[0]
    """

    dt: float
    values: NDArray[np.float64]
    initial: float | None = None

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 2:
            raise ParameterDomainError("GridFunction needs at least two values")
        if not np.all(np.isfinite(values)):
            raise ParameterDomainError("GridFunction values must be finite")
        if not self.dt > 0:
            raise ParameterDomainError("Grid step must be positive", details={"dt": self.dt})
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.initial is None:
            object.__setattr__(self, "initial", float(values[0]))

    @classmethod
    def from_callable(cls, func: Callable[[NDArray[np.float64]], ArrayLike], T: float,
                      dt: float) -> "GridFunction":
        """Sample a vectorized function on uniform_grid(T, dt)."""
        t = uniform_grid(T, dt)
        values = np.broadcast_to(np.asarray(func(t), dtype=np.float64), t.shape)
        return cls(dt, values)

    @property
    def n(self) -> int:
        """Number of steps N."""
        return self.values.size - 1

    @property
    def T(self) -> float:
        return self.n * self.dt

    @property
    def t_grid(self) -> NDArray[np.float64]:
        return np.arange(self.values.size) * self.dt

    def at(self, t: ArrayLike) -> NDArray[np.float64]:
        """Linear interpolation at arbitrary times in [0, T]."""
        return np.interp(t, self.t_grid, self.values)


def logistic_rhs(z: float) -> float:
    return z * (1.0 - z)


@dataclass(frozen=True)
class NonlocalProblem:
    """Cauchy problem D^Phi u + sigma = f(u), u(0) = u0, on [0, T].

    Attributes:
        spec: Symbol of the operator
        rhs: Scalar right-hand side f
        u0: Initial datum
        T: Final time
        dt: Time step
        lipschitz: Lipschitz constant of f on the reachable range
        sigma: Optional correction term, interpolated onto the grid
        rhs_name: Label for outputs
    """

    spec: SymbolSpec
    rhs: Rhs
    u0: float
    T: float
    dt: float
    lipschitz: float
    sigma: GridFunction | None = None
    rhs_name: str = "custom"

    def __post_init__(self) -> None:
        uniform_grid(self.T, self.dt)
        if self.rhs_name == "logistic" and not 0.0 < self.u0 < 1.0:
            raise ParameterDomainError(
                "Logistic problems need u0 in (0, 1)", details={"u0": self.u0}
            )
        if not (math.isfinite(self.lipschitz) and self.lipschitz >= 0):
            raise ParameterDomainError("Lipschitz constant must be finite and >= 0")

    @property
    def t_grid(self) -> NDArray[np.float64]:
        return uniform_grid(self.T, self.dt)

    def sigma_on_grid(self) -> NDArray[np.float64]:
        """sigma interpolated at the grid times (zero when absent)."""
        t = self.t_grid
        if self.sigma is None:
            return np.zeros_like(t)
        return self.sigma.at(t)


def logistic_problem(
    spec: SymbolSpec, u0: float, T: float, dt: float, sigma: GridFunction | None = None
) -> NonlocalProblem:
    """D^Phi u + sigma = u (1 - u)."""
    return NonlocalProblem(spec, logistic_rhs, u0, T, dt, 1.0, sigma, "logistic")


def linear_problem(spec: SymbolSpec, decay: float, u0: float, T: float, dt: float) -> NonlocalProblem:
    """D^Phi u = -decay u."""
    return NonlocalProblem(spec, lambda z: -decay * z, u0, T, dt, abs(decay), None, "linear")
