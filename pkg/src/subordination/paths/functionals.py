"""Classical growth curves v(s) composed with the inverse process.

The logistic curve solves v' = v(1 - v) and the exponential curve solves
v' = -a v; both are evaluated in operational time s.
"""

from collections.abc import Callable
from functools import partial

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ParameterDomainError

Curve = Callable[[ArrayLike], NDArray[np.float64]]


def logistic_curve(s: ArrayLike, v0: float) -> NDArray[np.float64]:
    """v(s) = v0 / (v0 + (1 - v0) e^-s)."""
    s = np.asarray(s, dtype=np.float64)
    return v0 / (v0 + (1.0 - v0) * np.exp(-s))


def exponential_curve(s: ArrayLike, c: float, decay: float) -> NDArray[np.float64]:
    """v(s) = c e^(-decay s)."""
    return c * np.exp(-decay * np.asarray(s, dtype=np.float64))


def _identity(s: ArrayLike) -> NDArray[np.float64]:
    return np.asarray(s, dtype=np.float64).copy()


def _constant(s: ArrayLike, c: float) -> NDArray[np.float64]:
    return np.full(np.shape(s), c, dtype=np.float64)


def make_functional(name: str, v0: float = 0.5, c: float = 1.0, decay: float = 1.0) -> Curve:
    """Build a named functional v.

    Args:
        name: "logistic", "exp", "identity" or "constant"
        v0: Initial value of the logistic curve
        c: Amplitude of "exp", value of "constant"
        decay: Rate of "exp"

    Raises:
        ParameterDomainError: On an unknown name
    """
    if name == "logistic":
        if not 0.0 < v0 < 1.0:
            raise ParameterDomainError("v0 must lie in (0, 1)", details={"v0": v0})
        return partial(logistic_curve, v0=v0)
    if name == "exp":
        return partial(exponential_curve, c=c, decay=decay)
    if name == "identity":
        return _identity
    if name == "constant":
        return partial(_constant, c=c)
    raise ParameterDomainError(
        f"Unknown functional '{name}'",
        details={"accepted": "logistic, exp, identity, constant"},
    )
