from fractions import Fraction

import pytest
from hypothesis import given, settings

from precsched.graph import (
    CycleError,
    InvalidEdge,
    InvalidWeight,
    build_graph,
    critical_path_length,
    descendants,
    hlfet_levels,
    normalize,
    order_strength,
    topological_order,
)

from oracles import all_paths, heaviest_path_from, order_strength_floyd
from strategies import dags


def test_build_chain_and_diamond(chain, diamond):
    assert chain.n == 3 and chain.succ(1) == (2,) and chain.pred(3) == (2,)
    assert diamond.succ(1) == (2, 3)
    assert diamond.pred(4) == (2, 3)
    assert (diamond.source_id, diamond.sink_id) == (1, 4)


def test_predecessors_are_transpose(diamond):
    for u in diamond.vertices:
        for v in diamond.succ(u):
            assert u in diamond.pred(v)
    assert sum(map(len, diamond.successors)) == sum(map(len, diamond.predecessors))


@pytest.mark.parametrize(
    "n, weights, edges, exc",
    [
        (2, [1, 1], [(1, 2), (2, 1)], CycleError),
        (3, [1, 1, 1], [(1, 2), (2, 3), (3, 1)], CycleError),
        (2, [1, 1], [(1, 3)], InvalidEdge),
        (2, [1, 1], [(0, 1)], InvalidEdge),
        (2, [1, 1], [(1, 1)], InvalidEdge),
        (2, [1, 1], [(1, 2), (1, 2)], InvalidEdge),
        (2, [1, -1], [], InvalidWeight),
    ],
)
def test_build_rejects(n, weights, edges, exc):
    with pytest.raises(exc):
        build_graph(n, weights, edges)


def test_normalize_isolated_vertices(ind4):
    assert ind4.n == 6
    src, snk = ind4.source_id, ind4.sink_id
    assert ind4.c(src) == 0 and ind4.c(snk) == 0
    assert set(ind4.succ(src)) == {1, 2, 3, 4}
    assert set(ind4.pred(snk)) == {1, 2, 3, 4}


def test_normalize_leaves_unique_endpoints_alone(chain):
    assert normalize(chain) is chain


def test_normalize_two_chains():
    g = normalize(build_graph(4, [1, 1, 1, 1], [(1, 2), (3, 4)]))
    assert g.n == 6
    assert len(g.succ(g.source_id)) == 2
    assert len(g.pred(g.sink_id)) == 2


def test_normalize_adds_only_missing_endpoint():
    g = normalize(build_graph(3, [1, 1, 1], [(1, 2), (1, 3)]))
    assert g.n == 4 and g.source_id == 1 and g.sink_id == 4


def test_topological_order_examples(chain, diamond):
    assert topological_order(chain) == {1: 1, 2: 2, 3: 3}
    assert topological_order(diamond) == {1: 1, 2: 2, 3: 3, 4: 4}


def test_topological_order_reversed_ids():
    g = build_graph(4, [1, 3, 2, 1], [(4, 3), (4, 2), (3, 1), (2, 1)])
    rank = topological_order(g)
    assert all(rank[u] < rank[v] for u, v in g.edges)
    assert sorted(rank.values()) == [1, 2, 3, 4]


def test_levels(chain, diamond):
    assert hlfet_levels(chain) == {1: 6, 2: 5, 3: 3}
    assert hlfet_levels(diamond) == {1: 5, 2: 3, 3: 4, 4: 1}
    assert hlfet_levels(build_graph(1, [7], [])) == {1: 7}
    for v in diamond.vertices:
        assert hlfet_levels(diamond)[v] == heaviest_path_from(diamond, v)


def test_critical_path(chain, diamond, ind4):
    assert critical_path_length(chain) == 6
    assert critical_path_length(diamond) == 5
    assert critical_path_length(ind4) == 1


def test_order_strength_examples(chain, diamond):
    assert order_strength(diamond) == Fraction(5, 6) == order_strength_floyd(diamond)
    assert order_strength(build_graph(4, [1] * 4, [])) == 0
    assert order_strength(chain) == 1


def test_order_strength_ignores_normalization_vertices():
    raw = build_graph(4, [1] * 4, [(1, 2)])
    assert order_strength(normalize(raw)) == order_strength(raw) == Fraction(1, 6)


@settings(max_examples=150, deadline=None)
@given(dags())
def test_graph_invariants(g):
    rank = topological_order(g)
    assert all(rank[u] < rank[v] for u, v in g.edges)
    levels = hlfet_levels(g)
    for u in g.vertices:
        assert levels[u] == g.c(u) + max((levels[v] for v in g.succ(u)), default=0)
    assert normalize(g) == g
    assert len(g.sources) == 1 and len(g.sinks) == 1
    paths = all_paths(g, g.source_id)
    assert critical_path_length(g) == max(sum(g.c(v) for v in p) for p in paths)


@settings(max_examples=100, deadline=None)
@given(dags(min_n=2, normalized=False))
def test_order_strength_matches_floyd(g):
    assert order_strength(g) == order_strength_floyd(g)
    desc = descendants(g)
    assert all(v in desc[u] for u, v in g.edges)


@settings(max_examples=100, deadline=None)
@given(dags(normalized=False))
def test_normalize_idempotent(g):
    once = normalize(g)
    assert normalize(once) == once
