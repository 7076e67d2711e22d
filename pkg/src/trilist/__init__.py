"""Orientation-based triangle listing with exact probe counters."""

from trilist.engine import (
    ALGORITHMS,
    CollectingSink,
    CountingSink,
    RunStats,
    WriterSink,
    aot,
    cf_hash,
    cf_merge,
    cost_model,
    kclist3,
    verify_equivalence,
)
from trilist.graph import Graph, ParseError, Triangle, load_edge_list
from trilist.oracle import brute_force_triangles
from trilist.ordering import (
    OrientedGraph,
    VertexOrder,
    apply_local_order,
    degeneracy_order,
    degree_order,
    edge_polarity,
    make_order,
    orient,
)
from trilist.parallel import ParallelConfig, run_parallel

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "CollectingSink",
    "CountingSink",
    "Graph",
    "OrientedGraph",
    "ParallelConfig",
    "ParseError",
    "RunStats",
    "Triangle",
    "VertexOrder",
    "WriterSink",
    "aot",
    "apply_local_order",
    "brute_force_triangles",
    "cf_hash",
    "cf_merge",
    "cost_model",
    "degeneracy_order",
    "degree_order",
    "edge_polarity",
    "kclist3",
    "load_edge_list",
    "make_order",
    "orient",
    "run_parallel",
    "verify_equivalence",
]
