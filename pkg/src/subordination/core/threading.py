"""Thread-safe primitives for concurrent numerical work.

Provides a locked cache for read-mostly tables (quadrature weights) and an
order-preserving thread-pool map used by the Monte Carlo drivers.
"""

import logging
import os
import threading
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Generic, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
K = TypeVar("K")
V = TypeVar("V")


class ThreadSafeDict(Generic[K, V]):
    """Locked mapping for tables computed once and shared read-only.

    Usage:
        cache = ThreadSafeDict[tuple, np.ndarray]()
        weights = cache.get_or_compute(key, lambda: build(key))
    """

    def __init__(self) -> None:
        self._data: dict[K, V] = {}
        self._lock = threading.Lock()

    def __contains__(self, key: object) -> bool:
        with self._lock:
            return key in self._data

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)

    def get_or_compute(self, key: K, factory: Callable[[], V]) -> V:
        """Return the cached value for key, computing it once if missing.

        The factory runs outside the lock; if two threads race, the first
        stored value wins and both callers receive it.
        """
        with self._lock:
            if key in self._data:
                return self._data[key]
        value = factory()
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


def default_threads() -> int:
    """Available parallelism of the host."""
    return max(1, os.cpu_count() or 1)


def parallel_map(
    func: Callable[[T], V],
    items: Iterable[T],
    threads: int | None = None,
) -> list[V]:
    """Apply func to every item on a thread pool, preserving item order.

    Results come back in input order regardless of the pool size, so any
    reduction over them is deterministic.

    Args:
        func: Work function
        items: Work items
        threads: Pool size (None = available parallelism, 1 = run inline)

    Returns:
        List of results, one per item, in input order
    """
    work = list(items)
    threads = default_threads() if threads is None else threads
    if threads <= 1 or len(work) <= 1:
        return [func(item) for item in work]

    logger.debug("Dispatching %d work items on %d threads", len(work), threads)
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="subordination") as pool:
        return list(pool.map(func, work))
