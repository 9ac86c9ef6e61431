"""Inverse process L_t = inf{s >= 0 : H_s >= t} by grid inversion."""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ParameterDomainError
from .sampling import SamplePath, horizon_error

logger = logging.getLogger(__name__)

Functional = Callable[[NDArray[np.float64]], ArrayLike]


@dataclass(frozen=True)
class TimeChangedPath:
    """Inverse path and the time-changed curve v(L_t) on a wall-clock grid."""

    t_grid: NDArray[np.float64]
    L_values: NDArray[np.float64]
    v_of_L: NDArray[np.float64]
    source: SamplePath


def _check_times(path: SamplePath, t: NDArray[np.float64]) -> None:
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise ParameterDomainError("Wall-clock times must be nonnegative")
    t_max = float(t.max(initial=0.0))
    if t_max > path.horizon:
        raise horizon_error(t_max, path.horizon, path.s_max, path.extensions)


def inverse_path_grid(path: SamplePath, t_grid: ArrayLike) -> NDArray[np.float64]:
    """Evaluate L on many wall-clock times with one sorted search.

    Raises:
        ParameterDomainError: If a time is negative
        HorizonExceededError: If a time exceeds H(s_max)
    """
    t = np.asarray(t_grid, dtype=np.float64)
    _check_times(path, t)
    return np.searchsorted(path.values, t, side="left") * path.ds


def inverse_path(path: SamplePath, t: float) -> float:
    """Smallest grid point s with H(s) >= t; L(0) = 0.

    Raises:
        HorizonExceededError: If t > H(s_max), naming the needed s_max
    """
    return float(inverse_path_grid(path, np.float64(t)))


def time_changed_path(path: SamplePath, v: Functional, t_grid: ArrayLike) -> TimeChangedPath:
    """Evaluate (L_t, v(L_t)) on t_grid.

    Args:
        path: Simulated subordinator path
        v: Vectorized function of operational time
        t_grid: Wall-clock times

    Raises:
        HorizonExceededError: If t_grid exceeds H(s_max)
    """
    t = np.asarray(t_grid, dtype=np.float64)
    L = inverse_path_grid(path, t)
    v_of_L = np.broadcast_to(np.asarray(v(L), dtype=np.float64), L.shape).copy()
    return TimeChangedPath(t, L, v_of_L, path)
