"""Tests for the thread pool helpers and run-context logging."""

import json
import logging
import threading

import pytest

from subordination.core.logging import (
    ConsoleFormatter,
    JSONFormatter,
    RunContextFilter,
    bind_run_context,
)
from subordination.core.threading import ThreadSafeDict, parallel_map


class TestParallelMap:
    @pytest.mark.parametrize("threads", [1, 2, 8])
    def test_preserves_order(self, threads):
        assert parallel_map(lambda x: x * x, range(20), threads) == [x * x for x in range(20)]

    def test_empty(self):
        assert parallel_map(lambda x: x, [], 4) == []


class TestThreadSafeDict:
    def test_computes_once(self):
        cache: ThreadSafeDict[str, int] = ThreadSafeDict()
        calls = []

        def factory():
            calls.append(1)
            return 42

        assert cache.get_or_compute("k", factory) == 42
        assert cache.get_or_compute("k", factory) == 42
        assert len(calls) == 1
        assert "k" in cache and len(cache) == 1
        cache.clear()
        assert len(cache) == 0

    def test_concurrent_callers_share_value(self):
        cache: ThreadSafeDict[str, object] = ThreadSafeDict()
        results = []

        def worker():
            results.append(cache.get_or_compute("k", object))

        workers = [threading.Thread(target=worker) for _ in range(8)]
        for w in workers:
            w.start()
        for w in workers:
            w.join()
        assert all(r is results[0] for r in results)


def _record(**extra):
    record = logging.LogRecord("subordination.mc.sampler", logging.INFO, __file__, 1,
                               "drew %d paths", (10,), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


class TestLogging:
    def test_json_carries_context(self):
        line = json.loads(JSONFormatter().format(_record(family="gamma")))
        assert line["message"] == "drew 10 paths"
        assert line["context"] == {"family": "gamma"}

    def test_run_context_is_stamped(self):
        context = RunContextFilter()
        context.context = {"seed": 3}
        record = _record()
        assert context.filter(record)
        assert record.seed == 3
        assert ConsoleFormatter().format(record).endswith("sampler: drew 10 paths [seed=3]")

    def test_explicit_extra_wins(self):
        context = RunContextFilter()
        context.context = {"seed": 3}
        record = _record(seed=9)
        context.filter(record)
        assert record.seed == 9

    def test_bind_drops_missing_values(self):
        bind_run_context(subcommand="solve", seed=None)
        from subordination.core import logging as run_logging

        assert run_logging._RUN_CONTEXT.context == {"subcommand": "solve"}
        bind_run_context()
