import pytest
from hypothesis import given, strategies as st

from citegrowth.graph import EdgeListError, Graph, read_edge_list, write_edge_list, load_edge_list

from conftest import complete, make, star


def assert_simple(g):
    total = 0
    for i, nbrs in enumerate(g.adj):
        assert i not in nbrs
        for j in nbrs:
            assert i in g.adj[j]
        total += len(nbrs)
    assert total == 2 * g.m


def test_add_node_sequential():
    g = Graph()
    assert g.add_node() == 0
    g = Graph(5)
    assert g.add_node() == 5
    assert g.add_node() == 6


def test_add_edge_rejects_loops_and_duplicates():
    g = Graph(2)
    assert g.add_edge(0, 1)
    assert g.m == 1
    assert not g.add_edge(0, 0)
    assert not g.add_edge(0, 1)
    assert not g.add_edge(1, 0)
    assert g.m == 1


def test_unknown_node_raises():
    g = Graph(2)
    with pytest.raises(KeyError):
        g.add_edge(0, 2)
    with pytest.raises(KeyError):
        g.neighbors(-1)
    with pytest.raises(KeyError):
        g.degree(7)


def test_degrees():
    tri = complete(3)
    assert all(tri.degree(i) == 2 for i in range(3))
    g = Graph(1)
    assert g.neighbors(0) == set() and g.degree(0) == 0
    assert star(3).degree(0) == 3


def test_components():
    g = make([(0, 1), (2, 3)])
    assert sorted(map(len, g.connected_components())) == [2, 2]
    assert len(complete(4).connected_components()) == 1
    assert Graph().connected_components() == []
    with pytest.raises(ValueError):
        Graph().largest_component()


def test_largest_component_k3_plus_isolated():
    g = make([(1, 2), (2, 3), (1, 3)], n=4)
    lc = g.largest_component()
    assert (lc.n, lc.m) == (3, 3)
    assert_simple(lc)
    # brute-force reachability: every pair of the relabelled graph is connected
    for s in range(lc.n):
        seen, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for v in lc.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        assert seen == set(range(3))


def test_edge_list_parse():
    g = Graph.from_edge_list(["0 1", "1 2"])
    assert (g.n, g.m) == (3, 2)
    g, dropped = read_edge_list(["# comment", "0 1", "0 1", "1 1", ""])
    assert (g.n, g.m, dropped) == (2, 1, 2)


def test_edge_list_compacts_ids_by_first_appearance():
    g = Graph.from_edge_list(["10 7", "7 42"])
    assert g.n == 3
    assert g.has_edge(0, 1) and g.has_edge(1, 2)


@pytest.mark.parametrize("bad, lineno", [(["0 1", "0"], 2), (["a b"], 1), (["0 1 2"], 1)])
def test_edge_list_malformed(bad, lineno):
    with pytest.raises(EdgeListError, match=f"line {lineno}"):
        read_edge_list(bad)


def test_edge_list_file_roundtrip(tmp_path):
    g = make([(0, 1), (1, 2), (2, 0), (2, 3)])
    path = tmp_path / "g.txt"
    write_edge_list(g, path, {"model": "test"})
    h = load_edge_list(path)
    assert sorted(h.edges()) == sorted(g.edges())


edge_lists = st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=40)


@given(edge_lists)
def test_invariants_hold_for_any_edges(edges):
    g = Graph.from_edges(edges, n=13)
    assert_simple(g)
    assert sum(len(c) for c in g.connected_components()) == g.n
    lc = g.largest_component()
    assert_simple(lc)
    assert lc.n == max(len(c) for c in g.connected_components())


@given(edge_lists)
def test_roundtrip_up_to_order(edges):
    edges = [(u, v) for u, v in edges]
    g, _ = read_edge_list(f"{u} {v}" for u, v in edges)
    lines = g.to_edge_list()
    h = Graph.from_edge_list(lines)
    # re-reading compacts ids by first appearance; map them back
    order = []
    for line in lines:
        for tok in line.split():
            if int(tok) not in order:
                order.append(int(tok))
    back = {(min(order[i], order[j]), max(order[i], order[j])) for i, j in h.edges()}
    assert back == set(g.edges())
