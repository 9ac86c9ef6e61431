"""Inverse-time draws on a whole time grid from one path population.

Every replication contributes one path, reused for all grid times (common
random numbers). Replications are split into fixed-size batches; batch b
draws from SeedSequence(seed, spawn_key=(b,)), so results do not depend on
the number of worker threads.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.config import Family
from ..core.errors import ParameterDomainError
from ..core.threading import parallel_map
from ..paths.horizon import HorizonPolicy
from ..paths.sampling import sample_batch
from ..symbols.base import SymbolSpec
from ..symbols.stable import positive_stable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplerSettings:
    """Monte Carlo path settings.

    Attributes:
        ds: Operational-time step of simulated paths
        batch_size: Replications per random-stream batch
        exact_stable: Draw stable L_t from the self-similar marginal (t/S)^alpha
        threads: Worker pool size (None for available parallelism)
        policy: Horizon extension policy
    """

    ds: float = 1e-3
    batch_size: int = 1000
    exact_stable: bool = True
    threads: int | None = None
    policy: HorizonPolicy = field(default_factory=HorizonPolicy)


DEFAULT_SAMPLER = SamplerSettings()


def batch_rng(seed: int, index: int) -> np.random.Generator:
    """Generator of batch `index` under master seed `seed`."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def batch_sizes(n: int, batch_size: int) -> list[int]:
    """Split n replications into fixed-size batches (last one partial)."""
    full, rest = divmod(n, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def run_batches(
    n: int,
    seed: int,
    settings: SamplerSettings,
    draw: Callable[[np.random.Generator, int], NDArray[np.float64]],
) -> NDArray[np.float64]:
    """Evaluate draw(rng, count) per batch and stack results in batch order."""
    if n < 2:
        raise ParameterDomainError("Monte Carlo needs n >= 2", details={"n": n})
    jobs = list(enumerate(batch_sizes(n, settings.batch_size)))
    blocks = parallel_map(lambda job: draw(batch_rng(seed, job[0]), job[1]), jobs, settings.threads)
    return np.concatenate(blocks, axis=0)


def _inverse_rows(H: NDArray[np.float64], t: NDArray[np.float64], ds: float) -> NDArray[np.float64]:
    out = np.empty((H.shape[0], t.size))
    for i, row in enumerate(H):
        out[i] = np.searchsorted(row, t, side="left") * ds
    return out


def sample_inverse_times(
    spec: SymbolSpec,
    t_grid: ArrayLike,
    n: int,
    seed: int,
    settings: SamplerSettings | None = None,
) -> NDArray[np.float64]:
    """Draw L_t for every t in t_grid on n independent paths.

    Returns:
        Array of shape (n, len(t_grid)); row i is one path

    Raises:
        HorizonExceededError: If paths cannot reach max(t_grid)
    """
    settings = settings or DEFAULT_SAMPLER
    t = np.atleast_1d(np.asarray(t_grid, dtype=np.float64))
    if np.any(t < 0):
        raise ParameterDomainError("Times must be nonnegative")
    t_max = float(t.max())

    if spec.family == Family.IDENTITY:

        def draw(rng: np.random.Generator, count: int) -> NDArray[np.float64]:
            return np.broadcast_to(t, (count, t.size)).copy()

    elif spec.family == Family.STABLE and settings.exact_stable:
        alpha = spec.params["alpha"]

        def draw(rng: np.random.Generator, count: int) -> NDArray[np.float64]:
            s = positive_stable(rng, alpha, count)
            return np.power(np.outer(1.0 / s, t), alpha)

    else:
        policy = settings.policy

        def draw(rng: np.random.Generator, count: int) -> NDArray[np.float64]:
            H = sample_batch(
                spec, settings.ds, count, t_max, rng, policy.growth, policy.max_doublings
            )
            return _inverse_rows(H, t, settings.ds)

    logger.debug(
        "Sampling L on %d times: family=%s n=%d seed=%d",
        t.size, spec.family.value, n, seed,
    )
    return run_batches(n, seed, settings, draw)


def sample_stieltjes(
    spec: SymbolSpec,
    v: Callable[[NDArray[np.float64]], ArrayLike],
    T: float,
    n: int,
    seed: int,
    settings: SamplerSettings | None = None,
    chunk: int = 1000,
) -> NDArray[np.float64]:
    """Per-path sums of v at cell midpoints times the increments of H on (0, T).

    Each value estimates int_0^T v(s) dH_s, whose mean is
    (lim Phi/lambda) int_0^T v(s) ds.
    """
    settings = settings or DEFAULT_SAMPLER
    ds = settings.ds
    steps = int(math.ceil(T / ds))
    mids = (np.arange(steps) + 0.5) * ds
    weights = np.broadcast_to(np.asarray(v(mids), dtype=np.float64), mids.shape)

    def draw(rng: np.random.Generator, count: int) -> NDArray[np.float64]:
        total = np.zeros(count)
        for start in range(0, steps, chunk):
            width = min(chunk, steps - start)
            block = spec.sample_increments(rng, ds, count * width).reshape(count, width)
            total += block @ weights[start : start + width]
        return total

    return run_batches(n, seed, settings, draw)
