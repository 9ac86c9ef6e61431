"""Discrete Caputo-type and Riemann-Liouville-type non-local derivatives.

L1-type scheme: u is piecewise linear, so on a uniform grid

    D^Phi u(t_j) = sum_{m=1}^{j} (u_m - u_{m-1}) / dt * W_{j-m}

with W the exact cell integrals of Pi-bar. The RL-type derivative adds the
initial-value term u(0) Pi-bar(t_j).
"""

import numpy as np
from numpy.typing import NDArray
from scipy import signal

from ..core.config import QuadratureSettings
from ..core.errors import ParameterDomainError
from ..symbols.base import SymbolSpec
from ..symbols.tail import TailKernel
from .grid import GridFunction
from .weights import cell_weights

FFT_THRESHOLD = 4096


def _convolve(slopes: NDArray[np.float64], weights: NDArray[np.float64]) -> NDArray[np.float64]:
    n = slopes.size
    if n > FFT_THRESHOLD:
        return signal.fftconvolve(slopes, weights)[:n]
    return np.convolve(slopes, weights)[:n]


def caputo_grid(
    spec: SymbolSpec, u: GridFunction, settings: QuadratureSettings | None = None
) -> NDArray[np.float64]:
    """D^Phi u at every grid point; entry 0 is NaN (undefined at t = 0)."""
    weights = cell_weights(spec, u.dt, u.n, settings)
    slopes = np.diff(u.values) / u.dt
    out = np.empty(u.values.size)
    out[0] = np.nan
    out[1:] = _convolve(slopes, weights)
    return out


def rl_grid(
    spec: SymbolSpec, u: GridFunction, settings: QuadratureSettings | None = None
) -> NDArray[np.float64]:
    """RL-type derivative at every grid point; entry 0 is NaN."""
    kernel = TailKernel(spec, settings=settings)
    out = caputo_grid(spec, u, settings)
    if u.initial:
        out[1:] += u.initial * kernel.on_grid(u.t_grid[1:])
    return out


def _check_index(u: GridFunction, j: int) -> None:
    if not 1 <= j <= u.n:
        raise ParameterDomainError("Grid index must lie in [1, N]", details={"j": j, "N": u.n})


def apply_caputo_type(
    spec: SymbolSpec, u: GridFunction, j: int, settings: QuadratureSettings | None = None
) -> float:
    """Caputo-type derivative D^Phi u(t_j), j >= 1.

    The identity symbol yields the backward difference (u_j - u_{j-1}) / dt.

    Raises:
        ParameterDomainError: If j is outside [1, N]
    """
    _check_index(u, j)
    weights = cell_weights(spec, u.dt, u.n, settings)
    slopes = np.diff(u.values[: j + 1]) / u.dt
    return float(np.dot(slopes, weights[:j][::-1]))


def apply_rl_type(
    spec: SymbolSpec, u: GridFunction, j: int, settings: QuadratureSettings | None = None
) -> float:
    """RL-type derivative: apply_caputo_type(u)(t_j) + u(0) Pi-bar(t_j).

    Raises:
        FamilyMismatchError: For the identity symbol (no Levy tail)
    """
    _check_index(u, j)
    kernel = TailKernel(spec, settings=settings)
    value = apply_caputo_type(spec, u, j, settings)
    return value + (u.initial or 0.0) * float(kernel(j * u.dt))
