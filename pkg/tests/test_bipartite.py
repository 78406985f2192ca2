from __future__ import annotations

import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclecert.bipartite import (
    FOUND,
    INCONCLUSIVE,
    NONE,
    BipartiteGraph,
    enumerate_cycles_of_length,
    exists_path_of_length,
    find_c4_small,
    find_cycle_of_length,
    girth,
    is_simple_cycle,
    iter_paths_of_length,
    random_edge_subgraph,
    read_graph,
    write_graph,
)
from cyclecert.rng import Stream


def cycle_graph(length: int) -> BipartiteGraph:
    half = length // 2
    edges = [(i, i) for i in range(half)] + [((i + 1) % half, i) for i in range(half)]
    return BipartiteGraph.from_edges(half, half, edges)


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    return BipartiteGraph.from_edges(a, b, [(i, j) for i in range(a) for j in range(b)])


def to_networkx(graph: BipartiteGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(graph.n_left + graph.n_right))
    for l, r in graph.edges():
        G.add_edge(l, graph.n_left + r)
    return G


def test_from_edges_rejects_duplicates_and_range():
    with pytest.raises(ValueError):
        BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        BipartiteGraph.from_edges(2, 2, [(0, 5)])


def test_edge_iteration_is_sorted():
    g = BipartiteGraph.from_edges(3, 3, [(2, 1), (0, 2), (0, 0), (1, 1)])
    assert list(g.edges()) == [(0, 0), (0, 2), (1, 1), (2, 1)]
    assert g.m == 4


def test_girth_trivial_cases():
    assert girth(cycle_graph(8)) == 8
    assert girth(complete_bipartite(2, 2)) == 4
    matching = BipartiteGraph.from_edges(5, 5, [(i, i) for i in range(5)])
    assert girth(matching) is None


def test_find_cycle_examples():
    ten = cycle_graph(10)
    assert find_cycle_of_length(ten, 8).status == NONE
    assert find_cycle_of_length(ten, 10).status == FOUND
    k33 = complete_bipartite(3, 3)
    res = find_cycle_of_length(k33, 6)
    assert res.status == FOUND
    assert is_simple_cycle(k33, res.witness)


def test_find_cycle_rejects_bad_lengths():
    g = cycle_graph(8)
    for bad in (3, 5, 7, 2, 12):
        with pytest.raises(ValueError):
            find_cycle_of_length(g, bad)


def test_enumeration_counts_against_closed_forms():
    # K_{3,3}: C(3,2)^2 = 9 rectangles and (3-1)! * (3-1)! * 3 / 2 = 6 hexagons
    k33 = complete_bipartite(3, 3)
    assert len(enumerate_cycles_of_length(k33, 4)[0]) == 9
    assert len(enumerate_cycles_of_length(k33, 6)[0]) == 6
    k44 = complete_bipartite(4, 4)
    assert len(enumerate_cycles_of_length(k44, 4)[0]) == 36


def test_enumerated_cycles_are_distinct_and_valid():
    k33 = complete_bipartite(3, 3)
    cycles, status = enumerate_cycles_of_length(k33, 6)
    assert status == FOUND

    def edge_set(cycle):
        return frozenset(
            frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))
        )

    assert len({edge_set(c) for c in cycles}) == len(cycles)
    assert all(is_simple_cycle(k33, c) for c in cycles)


def test_budget_returns_inconclusive():
    k44 = complete_bipartite(4, 4)
    res = find_cycle_of_length(k44, 8, budget=2)
    assert res.status == INCONCLUSIVE
    assert res.witness is None


def test_witness_validator_rejects_junk():
    k22 = complete_bipartite(2, 2)
    assert is_simple_cycle(k22, (0, 2, 1, 3))
    assert not is_simple_cycle(k22, (0, 2, 1, 2))  # repeated vertex
    assert not is_simple_cycle(k22, (0, 1, 2, 3))  # sides do not alternate
    assert not is_simple_cycle(k22, (0, 2, 1))  # odd length


def test_find_c4_small_examples():
    assert find_c4_small(complete_bipartite(2, 2)) == (0, 2, 1, 3)
    matching = BipartiteGraph.from_edges(5, 5, [(i, i) for i in range(5)])
    assert find_c4_small(matching) is None


def test_dense_5x5_always_has_c4():
    # 13 edges exceeds the C4-free maximum z(5,5;2,2) = 12
    stream = Stream(99)
    all_edges = [(i, j) for i in range(5) for j in range(5)]
    for _ in range(25):
        edges = all_edges[:]
        stream.shuffle(edges)
        g = BipartiteGraph.from_edges(5, 5, edges[:13])
        witness = find_c4_small(g)
        assert witness is not None
        assert is_simple_cycle(g, witness)


def test_subsample_keep_extremes_and_determinism():
    g = complete_bipartite(10, 10)
    assert random_edge_subgraph(g, 1.0, 3).m == 100
    assert random_edge_subgraph(g, 0.0, 3).m == 0
    a = random_edge_subgraph(g, 0.4, 7)
    b = random_edge_subgraph(g, 0.4, 7)
    assert list(a.edges()) == list(b.edges())
    with pytest.raises(ValueError):
        random_edge_subgraph(g, 1.5, 0)


def test_subsample_binomial_window():
    # 10^4 edges at keep 0.5: stay within 4 sigma = 200 of the mean 5000
    g = complete_bipartite(100, 100)
    sub = random_edge_subgraph(g, 0.5, 12345)
    assert abs(sub.m - 5000) <= 4 * math.sqrt(10_000 * 0.25)


def test_graph_file_round_trip(tmp_path):
    g = BipartiteGraph.from_edges(3, 4, [(0, 1), (0, 3), (2, 0), (1, 2)])
    path = tmp_path / "g.txt"
    write_graph(g, path, extra_header=("# flavor test",))
    back, extra = read_graph(path)
    assert extra == ("# flavor test",)
    assert list(back.edges()) == list(g.edges())
    assert (back.n_left, back.n_right) == (3, 4)
    path2 = tmp_path / "g2.txt"
    write_graph(back, path2, extra_header=extra)
    assert path.read_bytes() == path2.read_bytes()


def test_graph_file_header_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("L0 R0\n")
    with pytest.raises(ValueError):
        read_graph(bad)
    lying = tmp_path / "lying.txt"
    lying.write_text("# bipartite nLeft=2 nRight=2 m=5\nL0 R0\n")
    with pytest.raises(ValueError):
        read_graph(lying)


def test_iter_paths_of_length():
    g = complete_bipartite(2, 2)
    adj = g.global_adjacency()
    paths = list(iter_paths_of_length(adj, 0, 3))
    # 0 -> either right -> 1 -> other right: two 3-edge paths
    assert sorted(paths) == [(0, 2, 1, 3), (0, 3, 1, 2)]


def test_exists_path_of_length():
    # path graph L0-R0-L1-R1: one 3-edge path between the ends
    g = BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 0), (1, 1)])
    adj = [list(nbrs) for nbrs in g.global_adjacency()]
    assert exists_path_of_length(adj, 0, 3, 3) == FOUND
    assert exists_path_of_length(adj, 0, 3, 1) == NONE
    assert exists_path_of_length(adj, 0, 2, 1) == FOUND
    assert exists_path_of_length(adj, 0, 2, 3) == NONE  # no simple 3-edge route back
    assert exists_path_of_length(adj, 0, 3, 3, budget=0) == INCONCLUSIVE


# -- randomized cross-checks against networkx ------------------------------


@st.composite
def small_bipartite(draw):
    n_left = draw(st.integers(2, 6))
    n_right = draw(st.integers(2, 6))
    possible = [(i, j) for i in range(n_left) for j in range(n_right)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=len(possible)))
    return BipartiteGraph.from_edges(n_left, n_right, edges)


@given(small_bipartite())
@settings(max_examples=120)
def test_girth_matches_networkx(graph):
    ours = girth(graph)
    G = to_networkx(graph)
    theirs = nx.girth(G)
    assert ours == (None if theirs == math.inf else theirs)


@given(small_bipartite())
@settings(max_examples=120)
def test_cycle_search_matches_networkx(graph):
    G = to_networkx(graph)
    lengths = {len(c) for c in nx.simple_cycles(G, length_bound=10)}
    for L in (4, 6, 8, 10):
        res = find_cycle_of_length(graph, L)
        if L in lengths:
            assert res.status == FOUND
            assert is_simple_cycle(graph, res.witness)
            assert len(res.witness) == L
        else:
            assert res.status == NONE


@given(small_bipartite())
@settings(max_examples=80)
def test_enumeration_count_matches_networkx(graph):
    G = to_networkx(graph)
    for L in (4, 6, 8):
        want = sum(1 for c in nx.simple_cycles(G, length_bound=L) if len(c) == L)
        got, _ = enumerate_cycles_of_length(graph, L)
        assert len(got) == want


@given(small_bipartite())
@settings(max_examples=80)
def test_girth_is_min_findable_cycle_length(graph):
    g = girth(graph)
    findable = [L for L in (4, 6, 8, 10) if find_cycle_of_length(graph, L).status == FOUND]
    if g is not None and g <= 10:
        assert findable and min(findable) == g
    elif g is None:
        assert not findable
