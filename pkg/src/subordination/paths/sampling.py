"""Subordinator sample paths on a uniform operational-time grid.

Provides:
- SamplePath: immutable grid-sampled trajectory H with H(0) = 0
- sample_subordinator: seeded simulation from stationary increments
- extend_path: continue a path on the same random stream
- sample_batch: a block of independent paths as a 2D array
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ..core.config import Family
from ..core.errors import HorizonExceededError, NumericalToleranceError, ParameterDomainError
from ..symbols.base import SymbolSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplePath:
    """Subordinator trajectory H sampled at s = 0, ds, 2 ds, ...

    Attributes:
        spec: Symbol of the subordinator
        ds: Operational-time step
        values: Nondecreasing H values, values[0] = 0 (read-only)
        seed: Seed the path was generated from
        rng_state: Bit-generator state after the last increment
        extensions: Number of horizon extensions applied
    """

    spec: SymbolSpec
    ds: float
    values: NDArray[np.float64]
    seed: int
    rng_state: dict[str, Any] = field(repr=False, compare=False)
    extensions: int = 0

    def __post_init__(self) -> None:
        if self.values[0] != 0.0:
            raise NumericalToleranceError("Sample path must start at H(0) = 0")
        if np.any(np.diff(self.values) < 0):
            raise NumericalToleranceError(
                "Sample path is not nondecreasing",
                details={"family": self.spec.family.value, "seed": self.seed},
            )
        self.values.setflags(write=False)

    @property
    def steps(self) -> int:
        return self.values.size - 1

    @property
    def s_max(self) -> float:
        return self.steps * self.ds

    @property
    def s_grid(self) -> NDArray[np.float64]:
        return np.arange(self.values.size) * self.ds

    @property
    def horizon(self) -> float:
        """Largest wall-clock time the path can invert, H(s_max)."""
        return float(self.values[-1])


def horizon_error(
    t: float, reached: float, s_max: float, doublings: int
) -> HorizonExceededError:
    """Build the error raised when a path does not reach t.

    The details name the s_max extension a linear extrapolation of H needs.
    """
    suggested = s_max * t / reached if reached > 0 else float("inf")
    return HorizonExceededError(
        f"Path horizon {reached:.6g} does not reach t={t:.6g}",
        details={
            "t": t,
            "horizon": reached,
            "s_max": s_max,
            "suggested_s_max": suggested,
            "doublings": doublings,
        },
    )


def _draw(spec: SymbolSpec, rng: np.random.Generator, ds: float, size: int) -> NDArray[np.float64]:
    increments = spec.sample_increments(rng, ds, size)
    if not np.all(np.isfinite(increments)):
        raise NumericalToleranceError(
            "Increment sampler returned non-finite values",
            details={"family": spec.family.value, "ds": ds},
        )
    return increments


def sample_subordinator(spec: SymbolSpec, ds: float, s_max: float, seed: int) -> SamplePath:
    """Simulate H on {0, ds, ..., s_max} from independent stationary increments.

    Args:
        spec: Symbol of the subordinator
        ds: Operational-time step
        s_max: Operational-time horizon (rounded to a multiple of ds)
        seed: Seed of the path's random stream

    Returns:
        SamplePath with values[0] = 0

    Raises:
        ParameterDomainError: If ds <= 0 or s_max < ds
        CapabilityError: If the family has no increment sampler
    """
    if not ds > 0:
        raise ParameterDomainError("ds must be positive", details={"ds": ds})
    if s_max < ds:
        raise ParameterDomainError("s_max must be at least ds", details={"ds": ds, "s_max": s_max})

    steps = int(round(s_max / ds))
    rng = np.random.default_rng(seed)
    if spec.family == Family.IDENTITY:
        values = np.arange(steps + 1) * ds
    else:
        values = np.concatenate(([0.0], np.cumsum(_draw(spec, rng, ds, steps))))

    logger.debug(
        "Sampled %s path: %d steps, H(s_max)=%.6g",
        spec.family.value, steps, values[-1],
        extra={"seed": seed, "ds": ds},
    )
    return SamplePath(spec, ds, values, seed, rng.bit_generator.state)


def extend_path(path: SamplePath, extra_steps: int) -> SamplePath:
    """Append extra_steps increments drawn from the path's continued stream."""
    if extra_steps <= 0:
        return path
    rng = np.random.default_rng()
    rng.bit_generator.state = path.rng_state
    start = path.values.size
    if path.spec.family == Family.IDENTITY:
        tail = np.arange(start, start + extra_steps) * path.ds
    else:
        tail = path.values[-1] + np.cumsum(_draw(path.spec, rng, path.ds, extra_steps))
    values = np.concatenate((path.values, tail))
    return SamplePath(
        path.spec, path.ds, values, path.seed, rng.bit_generator.state, path.extensions + 1
    )


def initial_steps(spec: SymbolSpec, ds: float, t_max: float, s_min: float = 1.0) -> int:
    """Number of steps expected to carry H past t_max."""
    mean_rate = spec.phi_over_lambda_limit()
    s_guess = s_min
    if math.isfinite(mean_rate) and mean_rate > 0:
        s_guess = max(s_min, 1.5 * t_max / mean_rate)
    return max(1, int(math.ceil(s_guess / ds)))


def sample_batch(
    spec: SymbolSpec,
    ds: float,
    size: int,
    t_max: float,
    rng: np.random.Generator,
    growth: float = 2.0,
    max_doublings: int = 30,
) -> NDArray[np.float64]:
    """Simulate `size` paths until every path exceeds t_max.

    Returns:
        Array of shape (size, steps + 1), row i holding one path with H(0) = 0

    Raises:
        HorizonExceededError: If max_doublings extensions do not suffice
    """
    steps = initial_steps(spec, ds, t_max)
    blocks = [np.zeros((size, 1))]
    last = np.zeros(size)
    total = 0
    for extension in range(max_doublings + 1):
        block = _draw(spec, rng, ds, size * steps).reshape(size, steps)
        block = last[:, None] + np.cumsum(block, axis=1)
        blocks.append(block)
        last = block[:, -1]
        total += steps
        if np.all(last >= t_max):
            logger.debug("Batch of %d paths reached t=%g after %d steps", size, t_max, total)
            return np.concatenate(blocks, axis=1)
        steps = int(math.ceil(total * (growth - 1.0)))
    raise horizon_error(t_max, float(last.min()), total * ds, max_doublings)
