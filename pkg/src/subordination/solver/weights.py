"""Convolution-quadrature weights of the Levy tail.

W_m is the exact integral of Pi-bar over the cell [m dt, (m + 1) dt].
Tables are cached per (symbol, dt, N) and shared read-only.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from ..core.config import Family, QuadratureSettings
from ..core.threading import ThreadSafeDict
from ..symbols.base import SymbolSpec

logger = logging.getLogger(__name__)

_WEIGHT_CACHE: ThreadSafeDict[tuple[object, float, int], NDArray[np.float64]] = ThreadSafeDict()


def cell_weights(
    spec: SymbolSpec, dt: float, n: int, settings: QuadratureSettings | None = None
) -> NDArray[np.float64]:
    """Weights W_0..W_{n-1}.

    The identity symbol gets W = (1, 0, ..., 0), so the operator reduces to
    the backward difference.
    """

    def compute() -> NDArray[np.float64]:
        if spec.family == Family.IDENTITY:
            weights = np.zeros(n)
            weights[0] = 1.0
        else:
            edges = np.arange(n + 1) * dt
            weights = spec.cell_integrals(edges, settings)
            logger.debug(
                "Computed %d tail weights for %s (dt=%g)", n, spec.family.value, dt
            )
        weights.setflags(write=False)
        return weights

    return _WEIGHT_CACHE.get_or_compute((spec.key, float(dt), int(n)), compute)


def clear_weight_cache() -> None:
    """Drop all cached weight tables."""
    _WEIGHT_CACHE.clear()
