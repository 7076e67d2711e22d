import gzip
import io

import numpy as np
import pytest
from hypothesis import given

from trilist.generators import complete_graph, erdos_renyi, star_graph
from trilist.graph import Graph, ParseError, Triangle, dump_edge_list, load_edge_list

from conftest import pair_lists


def load(text, **kw):
    return load_edge_list(io.StringIO(text), **kw)


def test_k3():
    g = load("0 1\n1 2\n2 0\n")
    assert (g.n, g.m) == (3, 3)
    assert g.neighbors.tolist() == [1, 2, 0, 2, 0, 1]
    g.validate()


def test_self_loop_and_duplicate_collapsed():
    g = load("0 0\n0 1\n1 0\n")
    assert (g.n, g.m) == (2, 1)
    assert g.diagnostics.self_loops_dropped == 1
    assert g.diagnostics.duplicates_dropped == 1


def test_empty_input():
    g = load("")
    assert (g.n, g.m) == (0, 0)
    assert g.offsets.tolist() == [0]
    g.validate()


def test_comments_and_blank_lines():
    g = load("# header\n% matrix-market style\n\n0 1\n  \n1 2\n")
    assert (g.n, g.m) == (3, 2)


@pytest.mark.parametrize(
    "text, lineno",
    [("0 1\n1 x\n", 2), ("0 1\n\n5\n", 3), ("0 -1\n", 1), ("0 1.5\n", 1)],
)
def test_parse_errors_carry_line_number(text, lineno):
    with pytest.raises(ParseError) as err:
        load(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_one_indexed():
    g = load("1 2\n2 3\n", one_indexed=True)
    assert (g.n, g.m) == (3, 2)
    with pytest.raises(ParseError):
        load("0 1\n", one_indexed=True)


def test_compact_preserves_first_appearance():
    g = load("100 7\n7 42\n", compact=True)
    # 100 -> 0, 7 -> 1, 42 -> 2
    assert g.n == 3
    assert sorted(g.edges()) == [(0, 1), (1, 2)]


def test_verbatim_ids_leave_gaps():
    g = load("0 5\n")
    assert g.n == 6 and g.m == 1
    assert g.degree(3) == 0


def test_extra_columns_ignored():
    g = load("0 1 1234567\n1 2 99\n")
    assert g.m == 2


def test_gzip_path(tmp_path):
    path = tmp_path / "k3.txt.gz"
    with gzip.open(path, "wt") as fh:
        fh.write("0 1\n1 2\n2 0\n")
    g = load_edge_list(path)
    assert (g.n, g.m) == (3, 3)


def test_degree():
    assert complete_graph(3).degree(0) == 2
    s = star_graph(5)
    assert s.degree(0) == 5
    assert Graph.from_edges([(0, 1)], n=3).degree(2) == 0
    with pytest.raises(IndexError):
        s.degree(6)
    with pytest.raises(IndexError):
        s.degree(-1)


def test_triangle_canonical():
    assert Triangle.canonical(5, 1, 3) == Triangle(1, 3, 5)


def test_has_edge_and_edges():
    g = complete_graph(4)
    assert g.has_edge(0, 3) and g.has_edge(3, 0)
    assert list(g.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_graph_is_read_only():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        g.neighbors[0] = 2


@given(pair_lists())
def test_random_pairs_give_valid_graph(pairs):
    text = "".join(f"{u} {v}\n" for u, v in pairs)
    g = load(text)
    g.validate()
    assert int(g.degrees().sum()) == 2 * g.m
    expected = {(min(u, v), max(u, v)) for u, v in pairs if u != v}
    assert set(g.edges()) == expected


@given(pair_lists())
def test_dump_reload_is_identity(pairs):
    g = load("".join(f"{u} {v}\n" for u, v in pairs))
    buf = io.StringIO()
    dump_edge_list(g, buf)
    h = load(buf.getvalue())
    assert (h.n, h.m) == (g.n, g.m)
    assert np.array_equal(h.offsets, g.offsets)
    assert np.array_equal(h.neighbors, g.neighbors)


def test_degree_sum_on_random_graph():
    g = erdos_renyi(120, 0.1, seed=3)
    g.validate()
    assert sum(g.degree(u) for u in range(g.n)) == 2 * g.m
