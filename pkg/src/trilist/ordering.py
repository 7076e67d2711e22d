"""Global vertex orders, orientation into a DAG, and local adjacency ordering."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace
from enum import Enum

import numba
import numpy as np

from .graph import Graph

LOCAL_ORDERS = ("rank-asc", "degree-desc", "random")


@dataclass(frozen=True, eq=False)
class VertexOrder:
    """``rank[v]`` is the position of vertex ``v`` in the total order."""

    rank: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        self.rank.setflags(write=False)

    @classmethod
    def from_sequence(cls, vertices, name: str = "custom") -> "VertexOrder":
        """Order in which ``vertices[0]`` comes first."""
        seq = np.asarray(vertices, dtype=np.int64)
        rank = np.empty(seq.size, dtype=np.int64)
        rank[seq] = np.arange(seq.size, dtype=np.int64)
        order = cls(rank, name)
        order.check()
        return order

    @property
    def n(self) -> int:
        return int(self.rank.size)

    def sequence(self) -> np.ndarray:
        """Vertices listed from rank 0 upward."""
        seq = np.empty_like(self.rank)
        seq[self.rank] = np.arange(self.rank.size, dtype=np.int64)
        return seq

    def check(self) -> None:
        if not np.array_equal(np.sort(self.rank), np.arange(self.rank.size)):
            raise ValueError("rank is not a permutation of 0..n-1")


def id_order(graph: Graph) -> VertexOrder:
    return VertexOrder(np.arange(graph.n, dtype=np.int64), "id")


def degree_order(graph: Graph) -> VertexOrder:
    """Ascending (degree, ID)."""
    seq = np.lexsort((np.arange(graph.n), graph.degrees()))
    order = VertexOrder.from_sequence(seq, "degree")
    return order


def random_order(graph: Graph, seed: int) -> VertexOrder:
    seq = np.random.default_rng(seed).permutation(graph.n)
    return VertexOrder.from_sequence(seq, f"random:{seed}")


@numba.njit(cache=True)
def _peel(n, offsets, neighbors):
    deg = (offsets[1:] - offsets[:-1]).copy()
    removed = np.zeros(n, dtype=np.bool_)
    seq = np.empty(n, dtype=np.int64)
    # key = degree * n + id: the heap pops min degree, then min ID
    heap = [deg[v] * n + v for v in range(n)]
    heapq.heapify(heap)
    pos = 0
    while heap:
        key = heapq.heappop(heap)
        v = key % n
        if removed[v] or key // n != deg[v]:
            continue  # stale entry
        removed[v] = True
        seq[pos] = v
        pos += 1
        for i in range(offsets[v], offsets[v + 1]):
            w = neighbors[i]
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, deg[w] * n + w)
    return seq


def degeneracy_order(graph: Graph) -> VertexOrder:
    """Minimum-degree peeling order; ties go to the smaller vertex ID."""
    if graph.n == 0:
        return VertexOrder(np.zeros(0, dtype=np.int64), "degeneracy")
    seq = _peel(graph.n, graph.offsets, graph.neighbors)
    return VertexOrder.from_sequence(seq, "degeneracy")


def make_order(graph: Graph, spec: str) -> VertexOrder:
    """Build an order from its CLI name: ``degree``, ``degeneracy``, ``id`` or ``random:SEED``."""
    name, _, arg = spec.partition(":")
    if name == "degree" and not arg:
        return degree_order(graph)
    if name == "degeneracy" and not arg:
        return degeneracy_order(graph)
    if name == "id" and not arg:
        return id_order(graph)
    if name == "random":
        return random_order(graph, int(arg) if arg else 0)
    raise ValueError(f"unknown vertex order {spec!r}")


# ---------------------------------------------------------------------------
# orientation


@dataclass(frozen=True, eq=False)
class OrientedGraph:
    """DAG obtained by pointing every edge from lower to higher rank.

    Both adjacency directions are stored as CSR. ``local_order`` records how
    vertices are laid out inside each list; ``rank-asc`` is what the merge
    intersection needs.
    """

    n: int
    m: int
    out_offsets: np.ndarray
    out_neighbors: np.ndarray
    in_offsets: np.ndarray
    in_neighbors: np.ndarray
    out_degree: np.ndarray
    order: VertexOrder
    degree: np.ndarray  # undirected degree, kept for local ordering
    local_order: str = "rank-asc"

    def __post_init__(self):
        for arr in (self.out_offsets, self.out_neighbors, self.in_offsets,
                    self.in_neighbors, self.out_degree, self.degree):
            arr.setflags(write=False)

    def out_adj(self, u: int) -> np.ndarray:
        return self.out_neighbors[self.out_offsets[u]:self.out_offsets[u + 1]]

    def in_adj(self, u: int) -> np.ndarray:
        return self.in_neighbors[self.in_offsets[u]:self.in_offsets[u + 1]]

    def in_degree(self) -> np.ndarray:
        return np.diff(self.in_offsets)

    def edge_array(self) -> np.ndarray:
        """Directed edges (tail, head) as an (m, 2) array, in storage order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degree)
        return np.column_stack((src, self.out_neighbors))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(np.any(self.out_adj(u) == v))

    @property
    def nbytes(self) -> int:
        return sum(a.nbytes for a in (self.out_offsets, self.out_neighbors, self.in_offsets,
                                      self.in_neighbors, self.out_degree, self.degree,
                                      self.order.rank))

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, m={self.m}, order={self.order.name!r}, local_order={self.local_order!r})"


def _csr(n: int, src: np.ndarray, dst: np.ndarray, key: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Group ``dst`` by ``src``, ordering each group by ``key``."""
    perm = np.lexsort((key, src))
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return offsets, np.ascontiguousarray(dst[perm])


def orient(graph: Graph, order: VertexOrder) -> OrientedGraph:
    """Direct every edge (u, v) as u->v iff rank(u) < rank(v).

    Adjacency lists come out in ascending rank of the neighbour.
    """
    rank = order.rank
    if rank.shape != (graph.n,):
        raise ValueError(f"order covers {rank.size} vertices, graph has {graph.n}")
    order.check()
    deg = graph.degrees()
    src = np.repeat(np.arange(graph.n, dtype=np.int64), deg)
    dst = graph.neighbors
    fwd = rank[src] < rank[dst]
    tail, head = src[fwd], dst[fwd]
    del src, fwd
    out_offsets, out_neighbors = _csr(graph.n, tail, head, rank[head])
    in_offsets, in_neighbors = _csr(graph.n, head, tail, rank[tail])
    return OrientedGraph(
        n=graph.n,
        m=graph.m,
        out_offsets=out_offsets,
        out_neighbors=out_neighbors,
        in_offsets=in_offsets,
        in_neighbors=in_neighbors,
        out_degree=np.diff(out_offsets),
        order=order,
        degree=deg.copy(),
        local_order="rank-asc",
    )


def apply_local_order(og: OrientedGraph, policy: str = "degree-desc", seed: int | None = None) -> OrientedGraph:
    """Re-lay each out- and in-adjacency list; the edge set is unchanged.

    ``degree-desc`` sorts by descending undirected degree (ties: ascending ID),
    ``random`` shuffles each list reproducibly from ``seed``, ``rank-asc``
    restores the canonical layout. ``random:SEED`` is accepted as a policy.
    """
    name, _, arg = policy.partition(":")
    if name == "random" and arg:
        seed = int(arg)
    if name not in LOCAL_ORDERS or (arg and name != "random"):
        raise ValueError(f"unknown local order {policy!r}")
    if name == "random":
        seed = 0 if seed is None else seed
        rng = np.random.default_rng(seed)
        label = f"random:{seed}"
    else:
        label = name

    def relayout(offsets, nbrs):
        owner = np.repeat(np.arange(og.n, dtype=np.int64), np.diff(offsets))
        if name == "rank-asc":
            perm = np.lexsort((og.order.rank[nbrs], owner))
        elif name == "degree-desc":
            perm = np.lexsort((nbrs, -og.degree[nbrs], owner))
        else:
            perm = np.lexsort((rng.random(nbrs.size), owner))
        return np.ascontiguousarray(nbrs[perm])

    return replace(
        og,
        out_neighbors=relayout(og.out_offsets, og.out_neighbors),
        in_neighbors=relayout(og.in_offsets, og.in_neighbors),
        local_order=label,
    )


def rank_sorted(og: OrientedGraph) -> bool:
    """True if every adjacency list is in strictly ascending rank order."""
    rank = og.order.rank
    for offsets, nbrs in ((og.out_offsets, og.out_neighbors), (og.in_offsets, og.in_neighbors)):
        if nbrs.size < 2:
            continue
        owner = np.repeat(np.arange(og.n), np.diff(offsets))
        same = owner[1:] == owner[:-1]
        r = rank[nbrs]
        if np.any(r[1:][same] <= r[:-1][same]):
            return False
    return True


# ---------------------------------------------------------------------------
# edge polarity


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def out_degree_before(og: OrientedGraph, x: int, y: int) -> bool:
    """Strict (out-degree, ID) comparison used for every tie-break."""
    dx, dy = og.out_degree[x], og.out_degree[y]
    return bool(dx < dy or (dx == dy and x < y))


def edge_polarity(og: OrientedGraph, u: int, v: int) -> Polarity:
    """Polarity of the arc u->v: positive when u precedes v by (out-degree, ID)."""
    if not (0 <= u < og.n and 0 <= v < og.n) or not og.has_arc(u, v):
        raise ValueError(f"<{u},{v}> is not an arc of the oriented graph")
    return Polarity.POSITIVE if out_degree_before(og, u, v) else Polarity.NEGATIVE
