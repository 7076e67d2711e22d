"""Undirected simple graphs in CSR form, plus the edge-list reader/writer."""

from __future__ import annotations

import gzip
import io
import logging
import os
import re
from array import array
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

log = logging.getLogger(__name__)

DEFAULT_COMMENT_PREFIXES = ("#", "%")
_HEADER = re.compile(r"^#\s*n=(\d+)\b")


class ParseError(ValueError):
    """Raised for malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class Triangle(NamedTuple):
    a: int
    b: int
    c: int

    @classmethod
    def canonical(cls, x: int, y: int, z: int) -> "Triangle":
        a, b, c = sorted((int(x), int(y), int(z)))
        return cls(a, b, c)


@dataclass(frozen=True)
class LoadDiagnostics:
    vertices: int
    edges: int
    duplicates_dropped: int = 0
    self_loops_dropped: int = 0
    lines_read: int = 0

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "duplicates_dropped": self.duplicates_dropped,
            "self_loops_dropped": self.self_loops_dropped,
            "lines_read": self.lines_read,
        }


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``neighbors[offsets[u]:offsets[u + 1]]`` is the adjacency list of ``u``,
    sorted ascending by vertex ID.
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    diagnostics: LoadDiagnostics | None = field(default=None, compare=False)

    def __post_init__(self):
        self.offsets.setflags(write=False)
        self.neighbors.setflags(write=False)

    # construction ---------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]] | np.ndarray, n: int | None = None) -> "Graph":
        """Build a normalized graph from (u, v) pairs.

        Direction is ignored, duplicates collapse and self-loops are dropped.
        ``n`` defaults to ``max ID + 1``.
        """
        pairs = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if pairs.size == 0:
            pairs = pairs.reshape(0, 2)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ValueError("edges must be a sequence of (u, v) pairs")
        if pairs.size and pairs.min() < 0:
            raise ValueError("vertex IDs must be non-negative")
        graph, _, _ = _build(pairs[:, 0], pairs[:, 1], n)
        return graph

    # queries --------------------------------------------------------------

    def degree(self, u: int) -> int:
        if not 0 <= u < self.n:
            raise IndexError(f"vertex {u} out of range for graph with n={self.n}")
        return int(self.offsets[u + 1] - self.offsets[u])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def adjacency(self, u: int) -> np.ndarray:
        if not 0 <= u < self.n:
            raise IndexError(f"vertex {u} out of range for graph with n={self.n}")
        return self.neighbors[self.offsets[u]:self.offsets[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        adj = self.adjacency(u)
        i = np.searchsorted(adj, v)
        return bool(i < adj.size and adj[i] == v)

    def edge_array(self) -> np.ndarray:
        """All undirected edges as an (m, 2) array with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = src < self.neighbors
        return np.column_stack((src[keep], self.neighbors[keep]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edge_array():
            yield int(u), int(v)

    @property
    def nbytes(self) -> int:
        return self.offsets.nbytes + self.neighbors.nbytes

    def validate(self) -> None:
        """Check every structural invariant; raise AssertionError on the first violation."""
        off, nb = self.offsets, self.neighbors
        assert off.shape == (self.n + 1,), "offsets length"
        assert off[0] == 0 and off[-1] == 2 * self.m, "offsets endpoints"
        assert nb.shape == (2 * self.m,), "neighbors length"
        assert np.all(np.diff(off) >= 0), "offsets nondecreasing"
        if self.m == 0:
            return
        assert nb.min() >= 0 and nb.max() < self.n, "neighbor IDs in range"
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(off))
        assert not np.any(src == nb), "self-loop"
        # strictly ascending within each list => sorted and duplicate-free
        same_row = src[1:] == src[:-1]
        assert np.all(nb[1:][same_row] > nb[:-1][same_row]), "adjacency sorted and unique"
        fwd = np.sort(src * self.n + nb)
        rev = np.sort(nb * self.n + src)
        assert np.array_equal(fwd, rev), "symmetry"

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _build(u: np.ndarray, v: np.ndarray, n: int | None) -> tuple[Graph, int, int]:
    """Normalize raw endpoint arrays into a Graph; returns (graph, duplicates, self-loops)."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if n is None:
        n = int(max(u.max(), v.max())) + 1 if u.size else 0
    elif u.size and max(u.max(), v.max()) >= n:
        raise ValueError(f"vertex ID exceeds n={n}")

    loops = u == v
    self_loops = int(loops.sum())
    lo = np.minimum(u, v)[~loops]
    hi = np.maximum(u, v)[~loops]
    keys = np.unique(lo * max(n, 1) + hi)
    duplicates = int(lo.size - keys.size)
    lo, hi = np.divmod(keys, max(n, 1))

    src = np.concatenate((lo, hi))
    dst = np.concatenate((hi, lo))
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    graph = Graph(n=n, m=int(keys.size), offsets=offsets, neighbors=np.ascontiguousarray(dst))
    return graph, duplicates, self_loops


# ---------------------------------------------------------------------------
# edge-list I/O


def _open_text(source) -> tuple[IO[str], bool]:
    """Return (text stream, should_close). Paths ending in .gz or gzip magic are decompressed."""
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        if path == "-":
            import sys

            return sys.stdin, False
        with open(path, "rb") as fh:
            magic = fh.read(2)
        if magic == b"\x1f\x8b":
            return gzip.open(path, "rt", encoding="utf-8"), True
        return open(path, "r", encoding="utf-8"), True
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
        if data[:2] == b"\x1f\x8b":
            data = gzip.decompress(data)
        return io.StringIO(data.decode("utf-8")), True
    if hasattr(source, "read") and isinstance(source, (io.BufferedIOBase, io.RawIOBase)):
        return io.TextIOWrapper(source, encoding="utf-8"), False
    return source, False


def load_edge_list(
    source,
    comment_prefixes: Sequence[str] = DEFAULT_COMMENT_PREFIXES,
    one_indexed: bool = False,
    compact: bool = False,
) -> Graph:
    """Read a whitespace-separated edge list into a normalized :class:`Graph`.

    ``source`` may be a path (optionally gzip-compressed), a text stream, or
    an iterable of lines. Columns beyond the first two are ignored.

    With ``compact=True`` the original IDs are relabelled 0..n-1 in order of
    first appearance; otherwise IDs are used verbatim and ``n = max ID + 1``.
    """
    stream, close = _open_text(source)
    prefixes = tuple(comment_prefixes)
    us = array("q")
    vs = array("q")
    lineno = 0
    header_n = 0
    try:
        for lineno, line in enumerate(stream, 1):
            s = line.strip()
            if not s or s.startswith(prefixes):
                if lineno == 1:
                    hdr = _HEADER.match(s)
                    if hdr:
                        header_n = int(hdr.group(1))
                continue
            parts = s.split()
            if len(parts) < 2:
                raise ParseError(f"expected two vertex IDs, got {s!r}", lineno)
            try:
                a = int(parts[0])
                b = int(parts[1])
            except ValueError:
                raise ParseError(f"malformed vertex ID in {s!r}", lineno) from None
            if one_indexed:
                a -= 1
                b -= 1
            if a < 0 or b < 0:
                raise ParseError(f"negative vertex ID in {s!r}", lineno)
            us.append(a)
            vs.append(b)
    finally:
        if close:
            stream.close()

    u = np.frombuffer(us, dtype=np.int64) if us else np.zeros(0, dtype=np.int64)
    v = np.frombuffer(vs, dtype=np.int64) if vs else np.zeros(0, dtype=np.int64)
    n = None
    if header_n and not compact:
        n = max(header_n, int(max(u.max(), v.max())) + 1 if u.size else 0)
    if compact and u.size:
        flat = np.column_stack((u, v)).ravel()
        ids, first = np.unique(flat, return_index=True)
        by_appearance = ids[np.argsort(first, kind="stable")]
        relabel = np.empty(by_appearance.size, dtype=np.int64)
        relabel[np.searchsorted(ids, by_appearance)] = np.arange(by_appearance.size)
        u = relabel[np.searchsorted(ids, u)]
        v = relabel[np.searchsorted(ids, v)]
        n = int(ids.size)

    graph, dups, loops = _build(u, v, n)
    diag = LoadDiagnostics(
        vertices=graph.n,
        edges=graph.m,
        duplicates_dropped=dups,
        self_loops_dropped=loops,
        lines_read=lineno,
    )
    object.__setattr__(graph, "diagnostics", diag)
    log.info(
        "loaded graph: %d vertices, %d edges (%d duplicates, %d self-loops dropped)",
        diag.vertices, diag.edges, dups, loops,
    )
    return graph


def dump_edge_list(graph: Graph, stream: IO[str]) -> None:
    """Write each undirected edge once as ``u v`` with u < v.

    A ``# n=... m=...`` header line preserves isolated trailing vertices;
    :func:`load_edge_list` honours it in verbatim-ID mode.
    """
    stream.write(f"# n={graph.n} m={graph.m}\n")
    for u, v in graph.edge_array():
        stream.write(f"{u} {v}\n")
