"""Brute-force triangle enumeration used as ground truth.

Works directly on the undirected adjacency; nothing here touches vertex
orders or orientation, so a bug there cannot hide itself.
"""

from __future__ import annotations

from .graph import Graph, Triangle

DEFAULT_CAP = 2000


class OracleCapExceeded(ValueError):
    pass


def brute_force_triangles(graph: Graph, cap: int = DEFAULT_CAP) -> list[Triangle]:
    """All triangles (a, b, c), a < b < c, in lexicographic order.

    Refuses graphs with more than ``cap`` vertices.
    """
    if graph.n > cap:
        raise OracleCapExceeded(
            f"brute-force oracle limited to {cap} vertices, graph has {graph.n}; raise cap explicitly"
        )
    adj = [set(graph.adjacency(u).tolist()) for u in range(graph.n)]
    out = []
    for u in range(graph.n):
        for v in sorted(adj[u]):
            if v <= u:
                continue
            for w in sorted(adj[v]):
                if w > v and w in adj[u]:
                    out.append(Triangle(u, v, w))
    return out
