import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trilist.generators import complete_graph, erdos_renyi, path_graph, star_graph
from trilist.graph import Graph
from trilist.ordering import (
    OrientedGraph,
    Polarity,
    VertexOrder,
    apply_local_order,
    degeneracy_order,
    degree_order,
    edge_polarity,
    id_order,
    make_order,
    orient,
    random_order,
    rank_sorted,
)

from conftest import is_acyclic, permutation_of, slow_degeneracy, small_graphs


class TestGlobalOrders:
    def test_degree_order_star(self):
        assert degree_order(star_graph(4)).rank.tolist() == [4, 0, 1, 2, 3]

    def test_degree_order_k4_is_id(self):
        assert degree_order(complete_graph(4)).rank.tolist() == [0, 1, 2, 3]

    def test_degree_order_path(self):
        assert degree_order(path_graph(3)).rank.tolist() == [0, 2, 1]

    def test_degeneracy_k3(self):
        assert degeneracy_order(complete_graph(3)).rank.tolist() == [0, 1, 2]

    def test_degeneracy_star_peels_leaves(self):
        # leaves 1..3 go first; then center and leaf 4 both have degree 1 and
        # the ID tie-break removes the center before the last leaf
        assert degeneracy_order(star_graph(4)).sequence().tolist() == [1, 2, 3, 0, 4]

    def test_degeneracy_ties_by_id_after_updates(self):
        # path 0-1-2-3: peel 0 (deg 1); then 1 and 3 both have degree 1, 1 wins by ID
        assert degeneracy_order(path_graph(4)).sequence().tolist() == [0, 1, 2, 3]

    @pytest.mark.parametrize("seed", range(5))
    def test_degeneracy_bounds_out_degree(self, seed):
        g = erdos_renyi(50, 0.2, seed=seed)
        og = orient(g, degeneracy_order(g))
        assert og.out_degree.max() <= slow_degeneracy(g)

    def test_make_order_names(self):
        g = erdos_renyi(30, 0.2, seed=1)
        assert make_order(g, "id").rank.tolist() == list(range(30))
        assert np.array_equal(make_order(g, "random:5").rank, random_order(g, 5).rank)
        with pytest.raises(ValueError):
            make_order(g, "bogus")

    def test_from_sequence_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            VertexOrder.from_sequence([0, 0, 1])


class TestOrient:
    def test_k3(self):
        g = complete_graph(3)
        og = orient(g, id_order(g))
        assert og.edge_array().tolist() == [[0, 1], [0, 2], [1, 2]]
        assert og.out_degree.tolist() == [2, 1, 0]

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            orient(complete_graph(3), id_order(complete_graph(4)))

    def test_sum_out_times_in_matches_pair_count(self):
        g = erdos_renyi(100, 0.1, seed=11)
        og = orient(g, degree_order(g))
        rank = og.order.rank
        # brute force: for every vertex count (lower-ranked nbr, higher-ranked nbr) pairs
        expected = 0
        for u in range(g.n):
            nbrs = g.adjacency(u).tolist()
            for a, b in itertools.product(nbrs, nbrs):
                if rank[a] < rank[u] < rank[b]:
                    expected += 1
        assert int(np.sum(og.out_degree * og.in_degree())) == expected

    @given(small_graphs(), st.data())
    def test_invariants_for_any_permutation(self, g, data):
        rank = data.draw(permutation_of(g.n))
        og = orient(g, VertexOrder(rank))
        arcs = og.edge_array().tolist()
        assert is_acyclic(g.n, arcs)
        assert all(rank[u] < rank[v] for u, v in arcs)
        assert {(min(u, v), max(u, v)) for u, v in arcs} == set(g.edges())
        assert int(og.out_degree.sum()) == int(og.in_degree().sum()) == g.m
        assert np.all(og.out_degree <= g.degrees())
        assert rank_sorted(og)
        transposed = sorted((v, u) for u, v in arcs)
        in_arcs = sorted((v, u) for v in range(g.n) for u in og.in_adj(v).tolist())
        assert in_arcs == sorted((v, u) for u, v in arcs) == transposed

    def test_read_only(self):
        g = complete_graph(4)
        og = orient(g, degree_order(g))
        with pytest.raises(ValueError):
            og.out_neighbors[0] = 0


class TestLocalOrder:
    def _graph(self):
        # vertex 0 points to 1 (deg 3), 2 (deg 5), 3 (deg 3)
        edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4), (2, 5), (2, 6), (2, 7), (3, 6), (3, 7)]
        return Graph.from_edges(edges)

    def test_degree_desc_rule(self):
        g = self._graph()
        og = apply_local_order(orient(g, id_order(g)), "degree-desc")
        assert og.out_adj(0).tolist() == [2, 1, 3]
        assert og.local_order == "degree-desc"

    @given(small_graphs(), st.sampled_from(["degree-desc", "random:3", "rank-asc"]))
    def test_multisets_preserved(self, g, policy):
        og = orient(g, degree_order(g))
        lo = apply_local_order(og, policy)
        for u in range(g.n):
            assert sorted(lo.out_adj(u).tolist()) == sorted(og.out_adj(u).tolist())
            assert sorted(lo.in_adj(u).tolist()) == sorted(og.in_adj(u).tolist())

    def test_random_is_deterministic(self):
        g = erdos_renyi(60, 0.2, seed=2)
        og = orient(g, degree_order(g))
        a = apply_local_order(og, "random", seed=9)
        b = apply_local_order(og, "random:9")
        assert np.array_equal(a.out_neighbors, b.out_neighbors)
        assert np.array_equal(a.in_neighbors, b.in_neighbors)

    def test_rank_asc_restores_canonical(self):
        g = erdos_renyi(60, 0.2, seed=2)
        og = orient(g, degeneracy_order(g))
        back = apply_local_order(apply_local_order(og, "degree-desc"), "rank-asc")
        assert np.array_equal(back.out_neighbors, og.out_neighbors)
        assert np.array_equal(back.in_neighbors, og.in_neighbors)
        assert not rank_sorted(apply_local_order(og, "degree-desc")) or og.m < 3

    def test_unknown_policy(self):
        g = complete_graph(3)
        with pytest.raises(ValueError):
            apply_local_order(orient(g, id_order(g)), "sideways")


def _with_out_degrees(out_deg) -> OrientedGraph:
    """Oriented graph of 2 + extra vertices shaped so the given arc 0->1 exists
    and out-degrees of 0 and 1 are as requested."""
    du, dv = out_deg
    edges = [(0, 1)]
    nxt = 2
    for _ in range(du - 1):
        edges.append((0, nxt))
        nxt += 1
    for _ in range(dv):
        edges.append((1, nxt))
        nxt += 1
    g = Graph.from_edges(edges, n=nxt)
    # 0 first, then 1, then the rest: all arcs leave 0 and 1
    seq = [0, 1] + list(range(2, nxt))
    return orient(g, VertexOrder.from_sequence(seq))


class TestPolarity:
    def test_smaller_tail_is_positive(self):
        og = _with_out_degrees((3, 4))
        assert og.out_degree[0] == 3 and og.out_degree[1] == 4
        assert edge_polarity(og, 0, 1) is Polarity.POSITIVE

    def test_larger_tail_is_negative(self):
        og = _with_out_degrees((4, 3))
        assert edge_polarity(og, 0, 1) is Polarity.NEGATIVE

    def test_tie_broken_by_id(self):
        og = _with_out_degrees((3, 3))
        assert edge_polarity(og, 0, 1) is Polarity.POSITIVE

    def test_absent_arc(self):
        og = _with_out_degrees((2, 2))
        with pytest.raises(ValueError):
            edge_polarity(og, 1, 0)

    @given(small_graphs())
    def test_every_arc_has_exactly_one_polarity(self, g):
        og = orient(g, degree_order(g))
        for u, v in og.edge_array().tolist():
            p = edge_polarity(og, u, v)
            assert p in (Polarity.POSITIVE, Polarity.NEGATIVE)
            d = og.out_degree
            assert (p is Polarity.POSITIVE) == ((d[u], u) < (d[v], v))
