from __future__ import annotations

from collections import deque

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from trilist.generators import (
    complete_graph,
    cycle_graph,
    diamond_graph,
    empty_graph,
    path_graph,
    star_graph,
    triangle_fan_example,
)
from trilist.graph import Graph

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def fixture_graphs() -> dict[str, Graph]:
    graphs = {f"K{n}": complete_graph(n) for n in range(3, 11)}
    graphs.update({f"star{k}": star_graph(k) for k in (1, 4, 5, 12)})
    graphs.update({f"path{n}": path_graph(n) for n in (2, 3, 7)})
    graphs.update({f"cycle{n}": cycle_graph(n) for n in (3, 4, 5, 9)})
    graphs["diamond"] = diamond_graph()
    graphs["empty0"] = empty_graph(0)
    graphs["isolated5"] = empty_graph(5)
    graphs["fan14"] = triangle_fan_example()
    return graphs


@pytest.fixture(scope="session")
def fixtures() -> dict[str, Graph]:
    return fixture_graphs()


# ---------------------------------------------------------------------------
# independent checks that share no code with the package


def is_acyclic(n: int, arcs) -> bool:
    """Kahn's topological sort."""
    out = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    ready = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while ready:
        u = ready.popleft()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    return seen == n


def slow_degeneracy(graph: Graph) -> int:
    """max over a min-degree peeling of the degree at removal; O(n^2)."""
    adj = {u: set(graph.adjacency(u).tolist()) for u in range(graph.n)}
    best = 0
    while adj:
        u = min(adj, key=lambda x: (len(adj[x]), x))
        best = max(best, len(adj[u]))
        for w in adj.pop(u):
            adj[w].discard(u)
    return best


def loop_costs(og) -> tuple[int, int, int]:
    """Per-arc cost sums by plain iteration."""
    outd = [int(x) for x in og.out_degree]
    cf = kc = ao = 0
    for u in range(og.n):
        for v in og.out_adj(u).tolist():
            cf += outd[u] + outd[v]
            kc += outd[v]
            ao += min(outd[u], outd[v])
    return cf, kc, ao


# ---------------------------------------------------------------------------
# hypothesis strategies


@st.composite
def pair_lists(draw, max_n: int = 14, max_pairs: int = 60):
    n = draw(st.integers(1, max_n))
    ids = st.integers(0, n - 1)
    return draw(st.lists(st.tuples(ids, ids), max_size=max_pairs))


@st.composite
def small_graphs(draw, max_n: int = 16):
    n = draw(st.integers(0, max_n))
    if n < 2:
        return Graph.from_edges([], n=n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges([p for p, keep in zip(pairs, mask) if keep], n=n)


def permutation_of(n: int):
    return st.permutations(list(range(n))).map(lambda p: np.array(p, dtype=np.int64))


# ---------------------------------------------------------------------------
# acceptance summary


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
