"""Triangle listing over an oriented graph: CF (merge and hash), kClist (k=3) and AOT.

Each algorithm emits every triangle exactly once to a :class:`TriangleSink`
and returns a :class:`RunStats` whose counters are exact operation counts:

* ``probes``: membership look-ups in the pivot's table (bitmap or hash set)
* ``merge_comparisons``: element comparisons in sorted-merge intersections
* ``table_builds``: element insertions into a bitmap or hash table

so the per-edge cost sums reported by :func:`cost_model` can be checked
against real runs.
"""

from __future__ import annotations

import threading
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import IO, Callable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from .bitmap import Bitmap
from .graph import Graph, Triangle
from .ordering import OrientedGraph, VertexOrder, apply_local_order, make_order, orient

# pivots per kernel call when triangles have to be materialized
DEFAULT_STREAM_CHUNK = 4096


@dataclass
class RunStats:
    algorithm: str = ""
    triangles: int = 0
    probes: int = 0
    merge_comparisons: int = 0
    table_builds: int = 0
    positive_triangles: int | None = None
    negative_triangles: int | None = None
    wall_time: float = 0.0

    @classmethod
    def from_counters(cls, algorithm: str, counters: np.ndarray, wall_time: float, polarity: bool) -> "RunStats":
        return cls(
            algorithm=algorithm,
            triangles=int(counters[K.TRIANGLES]),
            probes=int(counters[K.PROBES]),
            merge_comparisons=int(counters[K.MERGE_COMPARISONS]),
            table_builds=int(counters[K.TABLE_BUILDS]),
            positive_triangles=int(counters[K.POSITIVE]) if polarity else None,
            negative_triangles=int(counters[K.NEGATIVE]) if polarity else None,
            wall_time=wall_time,
        )

    def counters(self) -> dict:
        """Everything except wall time; identical across repeats and worker counts."""
        d = asdict(self)
        del d["wall_time"]
        return d

    def as_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# sinks


class TriangleSink:
    """Receives triangles as (pivot, second, third) in the algorithm's role order."""

    #: False lets the kernels skip materializing triangles entirely
    needs_triangles = True

    def emit(self, a: int, b: int, c: int) -> None:
        raise NotImplementedError

    def emit_batch(self, rows: np.ndarray) -> None:
        for a, b, c in rows.tolist():
            self.emit(a, b, c)

    def accept_count(self, k: int) -> None:
        """Called instead of ``emit_batch`` when ``needs_triangles`` is False."""

    def close(self) -> None:
        pass


class CountingSink(TriangleSink):
    needs_triangles = False

    def __init__(self):
        self.count = 0

    def emit(self, a, b, c):
        self.count += 1

    def emit_batch(self, rows):
        self.count += len(rows)

    def accept_count(self, k):
        self.count += k


class CollectingSink(TriangleSink):
    def __init__(self):
        self._batches: list[np.ndarray] = []

    def emit(self, a, b, c):
        self._batches.append(np.array([[a, b, c]], dtype=np.int64))

    def emit_batch(self, rows):
        if len(rows):
            self._batches.append(np.array(rows, dtype=np.int64, copy=True))

    def triangles(self) -> np.ndarray:
        """Emissions in role order, shape (k, 3)."""
        if not self._batches:
            return np.zeros((0, 3), dtype=np.int64)
        return np.concatenate(self._batches)

    def canonical(self) -> np.ndarray:
        """Each row sorted to a < b < c, rows sorted lexicographically; duplicates kept."""
        return canonicalize(self.triangles())

    def __len__(self) -> int:
        return sum(len(b) for b in self._batches)


class WriterSink(TriangleSink):
    """Streams ``a b c`` lines; canonical (a < b < c) unless ``canonical=False``."""

    def __init__(self, stream: IO[str], canonical: bool = True):
        self.stream = stream
        self.canonical = canonical
        self.count = 0

    def emit(self, a, b, c):
        if self.canonical:
            a, b, c = sorted((a, b, c))
        self.stream.write(f"{a} {b} {c}\n")
        self.count += 1

    def emit_batch(self, rows):
        if not len(rows):
            return
        if self.canonical:
            rows = np.sort(rows, axis=1)
        self.stream.write("".join(f"{a} {b} {c}\n" for a, b, c in rows.tolist()))
        self.count += len(rows)


class LockedSink(TriangleSink):
    """Serializes access to a shared sink (the slow path for parallel streaming)."""

    def __init__(self, inner: TriangleSink):
        self.inner = inner
        self.needs_triangles = inner.needs_triangles
        self._lock = threading.Lock()

    def emit(self, a, b, c):
        with self._lock:
            self.inner.emit(a, b, c)

    def emit_batch(self, rows):
        with self._lock:
            self.inner.emit_batch(rows)

    def accept_count(self, k):
        with self._lock:
            self.inner.accept_count(k)


def canonicalize(rows: np.ndarray) -> np.ndarray:
    rows = np.sort(np.asarray(rows, dtype=np.int64).reshape(-1, 3), axis=1)
    if len(rows):
        rows = rows[np.lexsort((rows[:, 2], rows[:, 1], rows[:, 0]))]
    return rows


# ---------------------------------------------------------------------------
# kernels behind a uniform chunk interface


@dataclass(frozen=True)
class Kernel:
    name: str
    make_state: Callable[[OrientedGraph], object]
    run_chunk: Callable  # (og, state, lo, hi, counters, collect, debug) -> (k, 3) array
    polarity: bool = False
    needs_rank_sorted: bool = False


def _no_state(og):
    return None


def _bitmap_state(og):
    return Bitmap(og.n)


class _HashState:
    def __init__(self, og: OrientedGraph, reuse_last: bool = False):
        widest = int(og.out_degree.max()) if og.n else 0
        size = 2
        while size < 2 * widest:
            size <<= 1
        self.table = np.zeros(size, dtype=np.int64)
        self.slots = np.zeros(max(widest, 1), dtype=np.int64)
        self.reuse_last = reuse_last


def _run_cf_merge(og, state, lo, hi, counters, collect, debug):
    return K.cf_merge_kernel(og.out_offsets, og.out_neighbors, og.order.rank, lo, hi, counters, collect, debug)


def _run_cf_hash(og, state, lo, hi, counters, collect, debug):
    return K.cf_hash_kernel(og.out_offsets, og.out_neighbors, lo, hi, state.table, state.slots,
                            counters, collect, state.reuse_last)


def _run_kclist(og, state, lo, hi, counters, collect, debug):
    return K.kclist_kernel(og.out_offsets, og.out_neighbors, lo, hi, state.words, counters, collect, debug)


def _run_aot(og, state, lo, hi, counters, collect, debug):
    return K.aot_kernel(og.out_offsets, og.out_neighbors, og.in_offsets, og.in_neighbors, og.out_degree,
                        lo, hi, state.words, counters, collect, debug)


KERNELS: dict[str, Kernel] = {
    "cf_merge": Kernel("cf_merge", _no_state, _run_cf_merge, needs_rank_sorted=True),
    "cf_hash": Kernel("cf_hash", _HashState, _run_cf_hash),
    "kclist3": Kernel("kclist3", _bitmap_state, _run_kclist),
    "aot": Kernel("aot", _bitmap_state, _run_aot, polarity=True),
}

ALIASES = {
    "cf": "cf_merge",
    "cf-merge": "cf_merge",
    "cf-hash": "cf_hash",
    "kclist": "kclist3",
    "kclist3": "kclist3",
    "aot": "aot",
    "cf_merge": "cf_merge",
    "cf_hash": "cf_hash",
}


def canonical_name(name: str) -> str:
    try:
        return ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(set(ALIASES))}") from None


def _check_layout(kernel: Kernel, og: OrientedGraph) -> None:
    if kernel.needs_rank_sorted and og.local_order != "rank-asc":
        raise ValueError(
            f"{kernel.name} needs rank-sorted adjacency, got local order {og.local_order!r}; "
            "use apply_local_order(og, 'rank-asc')"
        )


def run_kernel(
    kernel: Kernel,
    og: OrientedGraph,
    sink: TriangleSink | None = None,
    debug: bool = False,
    chunk: int = DEFAULT_STREAM_CHUNK,
    state=None,
) -> RunStats:
    """Run ``kernel`` over every pivot sequentially."""
    _check_layout(kernel, og)
    sink = sink if sink is not None else CountingSink()
    collect = sink.needs_triangles
    counters = np.zeros(K.N_COUNTERS, dtype=np.int64)
    if state is None:
        state = kernel.make_state(og)
    step = chunk if collect else max(og.n, 1)
    start = time.perf_counter()
    for lo in range(0, og.n, step):
        hi = min(lo + step, og.n)
        before = counters[K.TRIANGLES]
        rows = kernel.run_chunk(og, state, lo, hi, counters, collect, debug)
        if collect:
            sink.emit_batch(rows)
        else:
            sink.accept_count(int(counters[K.TRIANGLES] - before))
    elapsed = time.perf_counter() - start
    return RunStats.from_counters(kernel.name, counters, elapsed, kernel.polarity)


def cf_merge(og: OrientedGraph, sink: TriangleSink | None = None, debug: bool = False) -> RunStats:
    """Compact-forward: sorted-merge N+(u) with N+(v) for every arc u->v.

    Requires rank-ascending adjacency lists (the layout :func:`orient` returns).
    With ``debug`` the sort order of every list is checked as it is used.
    """
    return run_kernel(KERNELS["cf_merge"], og, sink, debug)


def cf_hash(og: OrientedGraph, sink: TriangleSink | None = None, debug: bool = False,
            reuse_last: bool = False) -> RunStats:
    """Compact-forward with a hash join per arc.

    The larger of N+(u), N+(v) is inserted into a fresh hash set and the
    smaller one probes it, so ``probes`` is the sum of per-arc minima while
    ``table_builds`` shows the rebuild cost. ``reuse_last`` keeps the most
    recently built table when the same vertex is chosen again.
    """
    kernel = KERNELS["cf_hash"]
    return run_kernel(kernel, og, sink, debug, state=_HashState(og, reuse_last))


def kclist3(og: OrientedGraph, sink: TriangleSink | None = None, debug: bool = False) -> RunStats:
    """Node-iterator over out-neighbourhoods: mark N+(u), scan N+(v) for each v in N+(u)."""
    return run_kernel(KERNELS["kclist3"], og, sink, debug)


def aot(og: OrientedGraph, sink: TriangleSink | None = None, debug: bool = False) -> RunStats:
    """Adaptive orientation.

    The pivot ``u`` loads N+(u) into a bitmap once. Every arc touching ``u``
    whose other endpoint precedes ``u`` by (out-degree, ID) is then charged to
    ``u``: out-neighbours ``v`` scan N+(v) (positive phase) and in-neighbours
    ``x`` scan N+(x) (negative phase). Each arc is charged exactly once, at
    the cost of its smaller out-degree endpoint.
    """
    return run_kernel(KERNELS["aot"], og, sink, debug)


ALGORITHMS: dict[str, Callable[..., RunStats]] = {
    "cf_merge": cf_merge,
    "cf_hash": cf_hash,
    "kclist3": kclist3,
    "aot": aot,
}


# ---------------------------------------------------------------------------
# cost model


@dataclass(frozen=True)
class CostModel:
    cf_cost: int
    kclist_cost: int
    aot_cost: int

    def as_dict(self) -> dict:
        return asdict(self)


def cost_model(og: OrientedGraph) -> CostModel:
    """Per-arc cost sums of the three intersection strategies.

    cf: deg+(u) + deg+(v); kclist: deg+(v); aot: min(deg+(u), deg+(v)),
    each summed over all arcs u->v.
    """
    d = og.out_degree
    tail = np.repeat(np.arange(og.n, dtype=np.int64), d)
    du, dv = d[tail], d[og.out_neighbors]
    return CostModel(
        cf_cost=int(du.sum() + dv.sum()),
        kclist_cost=int(dv.sum()),
        aot_cost=int(np.minimum(du, dv).sum()),
    )


# ---------------------------------------------------------------------------
# cross-checking


@dataclass
class AlgorithmCheck:
    stats: RunStats
    missing: list[Triangle] = field(default_factory=list)
    extra: list[Triangle] = field(default_factory=list)
    duplicated: list[Triangle] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.missing or self.extra or self.duplicated)

    def as_dict(self, limit: int = 20) -> dict:
        return {
            "passed": self.passed,
            "stats": self.stats.as_dict(),
            "missing_count": len(self.missing),
            "extra_count": len(self.extra),
            "duplicated_count": len(self.duplicated),
            "missing": [list(t) for t in self.missing[:limit]],
            "extra": [list(t) for t in self.extra[:limit]],
            "duplicated": [list(t) for t in self.duplicated[:limit]],
        }


@dataclass
class EquivalenceReport:
    order: str
    local_order: str
    reference: str
    reference_triangles: int
    results: dict[str, AlgorithmCheck]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "order": self.order,
            "local_order": self.local_order,
            "reference": self.reference,
            "reference_triangles": self.reference_triangles,
            "algorithms": {k: v.as_dict() for k, v in self.results.items()},
        }


def prepare_layout(og: OrientedGraph, algorithm: str) -> OrientedGraph:
    """Return ``og`` re-laid in rank order if ``algorithm`` needs it."""
    if KERNELS[canonical_name(algorithm)].needs_rank_sorted and og.local_order != "rank-asc":
        return apply_local_order(og, "rank-asc")
    return og


def _compare(rows: np.ndarray, reference: set[Triangle]) -> tuple[list, list, list]:
    canon = [Triangle(*r) for r in canonicalize(rows).tolist()]
    counts = Counter(canon)
    got = set(counts)
    duplicated = sorted(t for t, c in counts.items() if c > 1)
    return sorted(reference - got), sorted(got - reference), duplicated


def verify_equivalence(
    graph: Graph,
    algorithms: Sequence[str] = ("cf_merge", "cf_hash", "kclist3", "aot"),
    order: str | VertexOrder = "degree",
    local_order: str = "rank-asc",
    reference: Iterable[Triangle] | None = None,
    debug: bool = True,
) -> EquivalenceReport:
    """Run each algorithm on one orientation and compare canonical triangle sets.

    ``reference`` (e.g. the brute-force oracle's output) is the ground truth
    when given; otherwise the first algorithm's deduplicated output is.
    """
    if not algorithms:
        raise ValueError("no algorithms to verify")
    vo = order if isinstance(order, VertexOrder) else make_order(graph, order)
    og = orient(graph, vo)
    if local_order != "rank-asc":
        og = apply_local_order(og, local_order)

    outputs: dict[str, tuple[RunStats, np.ndarray]] = {}
    for name in algorithms:
        algo = canonical_name(name)
        sink = CollectingSink()
        stats = ALGORITHMS[algo](prepare_layout(og, algo), sink, debug=debug)
        outputs[algo] = (stats, sink.triangles())

    if reference is not None:
        ref = {Triangle(*t) for t in reference}
        ref_name = "oracle"
    else:
        ref_name = next(iter(outputs))
        ref = {Triangle(*r) for r in canonicalize(outputs[ref_name][1]).tolist()}

    results = {}
    for algo, (stats, rows) in outputs.items():
        missing, extra, duplicated = _compare(rows, ref)
        results[algo] = AlgorithmCheck(stats, missing, extra, duplicated)
    return EquivalenceReport(vo.name, og.local_order, ref_name, len(ref), results)
