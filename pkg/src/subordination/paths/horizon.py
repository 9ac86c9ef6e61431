"""Geometric horizon extension for path simulation.

A path simulated to s_max can only invert wall-clock times up to
H(s_max). HorizonPolicy grows the path on its own random stream until the
requested time is covered, so the extension introduces no bias.
"""

import logging
import math
from dataclasses import dataclass

from ..core.config import HorizonSettings
from .sampling import SamplePath, extend_path, horizon_error

logger = logging.getLogger(__name__)


@dataclass
class HorizonPolicy:
    """Geometric extension of simulated paths.

    Attributes:
        growth: Factor by which the number of steps grows per extension
        max_doublings: Maximum number of extensions before giving up
    """

    growth: float = 2.0
    max_doublings: int = 30

    @classmethod
    def from_settings(cls, settings: HorizonSettings) -> "HorizonPolicy":
        return cls(growth=settings.growth, max_doublings=settings.max_doublings)

    def extra_steps(self, steps: int) -> int:
        """Steps appended by one extension of a path with `steps` steps."""
        return max(1, int(math.ceil(steps * (self.growth - 1.0))))

    def extend_until(self, path: SamplePath, t: float) -> SamplePath:
        """Extend path until H(s_max) >= t.

        Raises:
            HorizonExceededError: If max_doublings extensions do not suffice
        """
        for _ in range(self.max_doublings):
            if path.horizon >= t:
                return path
            path = extend_path(path, self.extra_steps(path.steps))
            logger.debug(
                "Extended path to s_max=%.6g (H=%.6g, target t=%.6g)",
                path.s_max, path.horizon, t,
            )
        if path.horizon >= t:
            return path
        raise horizon_error(t, path.horizon, path.s_max, self.max_doublings)
