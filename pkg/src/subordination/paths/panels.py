"""Delayed logistic growth under an inverse stable time change.

Builds the three panels of the experiment: the classical logistic curve
v(s) on (0, s_max), one inverse stable path L_t up to a large wall-clock
horizon, and the time-changed curve v(L_t) with its plateaux.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..symbols.stable import StableSymbol
from .functionals import logistic_curve, make_functional
from .horizon import HorizonPolicy
from .inverse import TimeChangedPath, time_changed_path
from .sampling import SamplePath, sample_subordinator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthPanels:
    """Panels of the delayed-growth experiment."""

    s_grid: NDArray[np.float64]
    v_values: NDArray[np.float64]
    time_changed: TimeChangedPath
    params: dict[str, float]

    @property
    def path(self) -> SamplePath:
        return self.time_changed.source


def delayed_growth_panels(
    alpha: float = 0.5,
    v0: float = 0.1,
    seed: int = 0,
    s_max: float = 10.0,
    ds: float = 1e-3,
    horizon: float = 8e5,
    points: int = 4000,
    policy: HorizonPolicy | None = None,
) -> GrowthPanels:
    """Simulate one stable path until H exceeds the horizon and time-change v.

    Args:
        alpha: Stable index
        v0: Initial value of the logistic curve
        seed: Path seed
        s_max: Operational window of the classical panel
        ds: Operational-time step
        horizon: Wall-clock horizon of the time-changed panels
        points: Number of wall-clock grid points
        policy: Horizon extension policy

    Raises:
        HorizonExceededError: If the path cannot be extended to the horizon
    """
    policy = policy or HorizonPolicy()
    spec = StableSymbol(alpha)
    path = policy.extend_until(sample_subordinator(spec, ds, s_max, seed), horizon)

    s_grid = np.arange(int(round(s_max / ds)) + 1) * ds
    t_grid = np.linspace(0.0, horizon, points)
    changed = time_changed_path(path, make_functional("logistic", v0=v0), t_grid)
    logger.info(
        "panels: path extended %d times to s_max=%.6g, L_T=%.6g",
        path.extensions, path.s_max, changed.L_values[-1],
        extra={"seed": seed, "alpha": alpha},
    )
    return GrowthPanels(
        s_grid=s_grid,
        v_values=logistic_curve(s_grid, v0),
        time_changed=changed,
        params={
            "alpha": alpha,
            "v0": v0,
            "seed": seed,
            "ds": ds,
            "s_max": s_max,
            "horizon": horizon,
            "points": points,
            "path_s_max": path.s_max,
        },
    )


def longest_plateau(values: NDArray[np.float64]) -> int:
    """Length in grid steps of the longest run of equal consecutive values."""
    flat = np.diff(values) == 0
    best = run = 0
    for is_flat in flat:
        run = run + 1 if is_flat else 0
        best = max(best, run)
    return best
