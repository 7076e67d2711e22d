"""Shared-memory parallel driver.

Pivot vertices are handed out in fixed-size chunks from one shared counter.
Workers are threads running the compiled kernels with the GIL released; each
owns its scratch table (bitmap or hash set), counter array and sink. Only
the oriented graph and the chunk counter are shared.
"""

from __future__ import annotations

import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels as K
from .engine import KERNELS, CountingSink, RunStats, TriangleSink, _check_layout, canonical_name
from .ordering import OrientedGraph

THREADS_ENV = "TRILIST_THREADS"
DEFAULT_CHUNK = 64


@dataclass(frozen=True)
class ParallelConfig:
    workers: int = 1
    chunk: int = DEFAULT_CHUNK

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.chunk < 1:
            raise ValueError(f"chunk must be >= 1, got {self.chunk}")

    @classmethod
    def from_env(cls, workers: int | None = None, chunk: int = DEFAULT_CHUNK) -> "ParallelConfig":
        """Explicit ``workers`` wins, then $TRILIST_THREADS, then 1."""
        if workers is None:
            env = os.environ.get(THREADS_ENV)
            workers = int(env) if env else 1
        return cls(workers=workers, chunk=chunk)


class _ChunkQueue:
    def __init__(self, n: int, chunk: int):
        self._next = 0
        self._n = n
        self._chunk = chunk
        self._lock = threading.Lock()

    def take(self) -> tuple[int, int] | None:
        with self._lock:
            lo = self._next
            if lo >= self._n:
                return None
            self._next = min(lo + self._chunk, self._n)
            return lo, self._next


def run_parallel(
    algorithm: str,
    og: OrientedGraph,
    config: ParallelConfig | None = None,
    sink_factory: Callable[[], TriangleSink] | None = None,
    debug: bool = False,
) -> RunStats:
    """List all triangles of ``og`` with ``config.workers`` threads.

    ``sink_factory`` is called once per worker. Aggregated counters equal the
    sequential run exactly; emission order across workers is unspecified.
    """
    config = config or ParallelConfig()
    kernel = KERNELS[canonical_name(algorithm)]
    _check_layout(kernel, og)
    sink_factory = sink_factory or CountingSink
    queue = _ChunkQueue(og.n, config.chunk)

    def work() -> np.ndarray:
        counters = np.zeros(K.N_COUNTERS, dtype=np.int64)
        state = kernel.make_state(og)
        sink = sink_factory()
        collect = sink.needs_triangles
        while (task := queue.take()) is not None:
            before = counters[K.TRIANGLES]
            rows = kernel.run_chunk(og, state, task[0], task[1], counters, collect, debug)
            if collect:
                sink.emit_batch(rows)
            else:
                sink.accept_count(int(counters[K.TRIANGLES] - before))
        return counters

    start = time.perf_counter()
    if config.workers == 1:
        per_worker = [work()]
    else:
        with ThreadPoolExecutor(max_workers=config.workers, thread_name_prefix="trilist") as pool:
            futures = [pool.submit(work) for _ in range(config.workers)]
            per_worker = [f.result() for f in futures]
    elapsed = time.perf_counter() - start
    total = np.sum(per_worker, axis=0)
    return RunStats.from_counters(kernel.name, total, elapsed, kernel.polarity)
