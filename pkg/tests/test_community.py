import random

import pytest
from hypothesis import given, settings, strategies as st

from citegrowth.community import Partition, louvain, modularity
from citegrowth.generators import Model, ModelParams, generate
from citegrowth.graph import Graph

import oracles
from conftest import complete, star, two_cliques


def test_single_community_is_zero():
    for g in (star(4), complete(5), two_cliques()):
        assert modularity(g, [0] * g.n) == pytest.approx(0.0, abs=1e-15)


def test_two_cliques_value():
    g = two_cliques()
    q = modularity(g, [0] * 4 + [1] * 4)
    assert q == pytest.approx(2 * (6 / 13 - (13 / 26) ** 2))
    assert q == pytest.approx(0.4231, abs=1e-4)


def test_two_cliques_split_is_optimal_by_enumeration():
    g = two_cliques()
    best = max(
        oracles.modularity(g, {v: k for k, block in enumerate(part) for v in block})
        for part in oracles.set_partitions(list(range(8)))
    )
    assert best == pytest.approx(modularity(g, [0] * 4 + [1] * 4), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_louvain_finds_clique_split(seed):
    g = two_cliques()
    part = louvain(g, seed)
    assert modularity(g, part) >= 2 * (6 / 13 - 0.25) - 1e-9
    assert part.communities() == [{0, 1, 2, 3}, {4, 5, 6, 7}]


def test_louvain_edgeless_raises():
    with pytest.raises(ValueError):
        louvain(Graph(3))
    with pytest.raises(ValueError):
        modularity(Graph(3), [0, 0, 0])


def test_louvain_deterministic_given_seed():
    g, _ = generate(ModelParams(Model.CIT, 600, 0.3, 0.7, 1))
    assert louvain(g, 3).assignment == louvain(g, 3).assignment


def test_louvain_ring_of_cliques():
    edges = []
    for c in range(6):
        base = 5 * c
        edges += [(base + i, base + j) for i in range(5) for j in range(i + 1, 5)]
        edges.append((base + 4, (base + 5) % 30))
    g = Graph.from_edges(edges)
    part = louvain(g, 0)
    assert part.n_communities == 6
    assert modularity(g, part) == pytest.approx(oracles.modularity(g, part.assignment))


def test_partition_from_labels_dense():
    part = Partition.from_labels(["b", "a", "b", "c"])
    assert part.assignment == [0, 1, 0, 2]
    assert part.n_communities == 3


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_modularity_matches_oracle_and_louvain_nonnegative(data):
    n = data.draw(st.integers(2, 9))
    edges = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=25))
    g = Graph.from_edges(edges, n)
    if g.m == 0:
        return
    labels = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    assert modularity(g, labels) == pytest.approx(oracles.modularity(g, labels), abs=1e-12)
    part = louvain(g, random.Random(data.draw(st.integers(0, 100))))
    assert modularity(g, part) >= -1e-12
