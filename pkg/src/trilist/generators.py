"""Small deterministic graph families and random graphs for tests and benches."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(list(itertools.combinations(range(n), 2)), n=n)


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to leaves 1..leaves."""
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], n=leaves + 1)


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n=n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], n=n)


def diamond_graph() -> Graph:
    """K4 without the edge (2, 3)."""
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], n=4)


def empty_graph(n: int = 0) -> Graph:
    return Graph.from_edges([], n=n)


def erdos_renyi(n: int, p: float, seed: int | None = None) -> Graph:
    """G(n, p): each of the n(n-1)/2 pairs present independently with probability p."""
    rng = np.random.default_rng(seed)
    if n <= 4096:
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(iu.size) < p
        return Graph.from_edges(np.column_stack((iu[keep], ju[keep])), n=n)
    # sparse path: binomial edge count, then uniform distinct pairs
    total = n * (n - 1) // 2
    return gnm_random(n, int(rng.binomial(total, p)), seed=rng)


def gnm_random(n: int, m: int, seed=None) -> Graph:
    """Uniform random simple graph with exactly ``m`` edges (rejection on duplicates)."""
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"cannot place {m} edges on {n} vertices")
    keys = np.zeros(0, dtype=np.int64)
    while keys.size < m:
        need = m - keys.size
        u = rng.integers(0, n, size=need + need // 8 + 16)
        v = rng.integers(0, n, size=u.size)
        ok = u != v
        lo, hi = np.minimum(u, v)[ok], np.maximum(u, v)[ok]
        keys = np.unique(np.concatenate((keys, lo * n + hi)))
    keys = rng.permutation(keys)[:m]
    lo, hi = np.divmod(keys, n)
    return Graph.from_edges(np.column_stack((lo, hi)), n=n)


def triangle_fan_example() -> Graph:
    """Fourteen-vertex, 21-edge graph matching the worked cost example of AOT.

    Three identical gadgets (a, b, c, d) share two hub vertices 12 and 13:
    a-c, b-d, c-d, c-12, c-13, d-12, d-13. Under degree order the edges orient
    as a->c, b->d, c->d and {c, d}->{12, 13}, giving out-degrees a=b=1, c=3,
    d=2, hubs 0. Per gadget the kClist-style cost is 3 + 2 + 2 = 7 and the
    adaptive cost is 1 + 1 + 2 = 4, i.e. 21 and 12 overall.

    Vertex v_i of the worked example is ID i - 1.
    """
    edges = []
    for base in (0, 4, 8):
        a, b, c, d = base, base + 1, base + 2, base + 3
        edges += [(a, c), (b, d), (c, d), (c, 12), (c, 13), (d, 12), (d, 13)]
    return Graph.from_edges(edges, n=14)
