from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclecert.bipartite import FOUND, find_cycle_of_length, random_edge_subgraph, read_graph
from cyclecert.rng import Stream
from cyclecert.wenger import EdgeMask, PlaneId, WengerGraph, build_wenger, field_for_order


def test_field_for_order():
    assert field_for_order(8).p == 2 and field_for_order(8).e == 3
    assert field_for_order(9).p == 3 and field_for_order(9).e == 2
    assert field_for_order(7).e == 1
    with pytest.raises(ValueError):
        field_for_order(6)
    with pytest.raises(ValueError):
        field_for_order(12)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_construction_counts(q):
    host = build_wenger(q)
    assert host.n_points == q**5
    assert host.n_lines == q**5
    assert host.graph.m == q**6
    assert all(len(nbrs) == q for nbrs in host.graph.adj_left)
    assert all(len(nbrs) == q for nbrs in host.graph.adj_right)


def test_edge_budget_guard():
    with pytest.raises(ValueError):
        build_wenger(16)  # 16^6 edges, over the default budget
    assert build_wenger(2, max_edges=100).graph.m == 64  # explicit budgets work


def test_point_index_round_trip(w3):
    for idx in range(0, w3.n_points, 17):
        assert w3.point_index(w3.point_coords(idx)) == idx


def test_line_through_hand_example(w3):
    # over GF(3): from (1,1,0,0,0) along (1,1,1,1,1) back to first-coord zero
    line = w3.line_through((1, 1, 0, 0, 0), 1)
    assert w3.line_class(line) == 1
    assert w3.line_base(line) == (0, 2, 2, 2)
    pts = [w3.point_coords(p) for p in w3.points_on_line(line)]
    assert (1, 1, 0, 0, 0) in pts
    assert (0, 0, 2, 2, 2) in pts
    assert (2, 2, 1, 1, 1) in pts


def test_line_through_origin(w3):
    for a in range(3):
        line = w3.line_through((0,) * 5, a)
        assert w3.line_base(line) == (0, 0, 0, 0)
        assert w3.line_class(line) == a


def test_line_representative_is_translation_invariant(w3):
    line = w3.line_through((2, 1, 0, 2, 1), 2)
    for p in w3.points_on_line(line):
        assert w3.line_through_index(p, 2) == line


def test_every_line_has_q_points_every_point_q_lines(w3):
    for line in range(0, w3.n_lines, 11):
        pts = w3.points_on_line(line)
        assert len(set(pts)) == w3.q
    for p in range(0, w3.n_points, 13):
        lines = {w3.line_through_index(p, a) for a in range(w3.q)}
        assert len(lines) == w3.q
        assert {w3.line_class(line) for line in lines} == set(range(w3.q))


def test_intersection_point_through_origin(w3):
    l0 = w3.line_through((0,) * 5, 0)
    l1 = w3.line_through((0,) * 5, 1)
    assert w3.intersection_point(l0, l1) == (0, 0, 0, 0, 0)


def test_intersection_matches_brute_force(w3):
    stream = Stream(5)
    for _ in range(60):
        l1 = stream.randrange(w3.n_lines)
        l2 = stream.randrange(w3.n_lines)
        if w3.line_class(l1) == w3.line_class(l2):
            continue
        meet = w3.intersection_point(l1, l2)
        common = set(w3.points_on_line(l1)) & set(w3.points_on_line(l2))
        if meet is None:
            assert not common
        else:
            assert common == {w3.point_index(meet)}


def test_intersection_same_class_rejected(w3):
    with pytest.raises(ValueError):
        w3.intersection_point(0, 1)  # both in class 0


def test_plane_of_skew_lines_rejected(w3):
    # find one skew pair by scanning
    for l2 in range(w3.class_size, 2 * w3.class_size):
        if w3.intersection_point(0, l2) is None:
            with pytest.raises(ValueError):
                w3.plane_of(0, l2)
            return
    pytest.fail("no skew pair found in class pair (0, 1)")


def test_plane_count_is_cubed(w3):
    # every intersecting pair lands on one of exactly q^3 plane representatives
    q = w3.q
    reps = set()
    for b1 in range(w3.class_size):
        l1 = 0 * w3.class_size + b1
        for b2 in range(w3.class_size):
            l2 = 1 * w3.class_size + b2
            if w3.intersection_point(l1, l2) is not None:
                plane = w3.plane_of(l1, l2)
                reps.add(plane.rep)
                lines_i = w3.lines_in_plane(plane, 0)
                lines_j = w3.lines_in_plane(plane, 1)
                assert l1 in lines_i and l2 in lines_j
    assert len(reps) == q**3


def test_lines_in_plane_shape(w3):
    plane = w3.plane_of(w3.line_through((0,) * 5, 0), w3.line_through((0,) * 5, 1))
    assert plane == PlaneId(0, 1, (0, 0, 0))
    for cls in (0, 1):
        lines = w3.lines_in_plane(plane, cls)
        assert len(lines) == 3
        assert all(w3.line_class(line) == cls for line in lines)
    with pytest.raises(ValueError):
        w3.lines_in_plane(plane, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_kqq_decomposition(q):
    host = build_wenger(q)
    for i, j in host.class_pairs():
        rep = host.verify_kqq_decomposition(i, j)
        assert rep.component_count == q**3
        assert rep.all_components_kqq
        assert rep.components_match_planes


def test_auxiliary_graph_full_and_empty(w3):
    plane = PlaneId(0, 1, (0, 0, 0))
    full = w3.auxiliary_graph(EdgeMask.full(w3), 0, 1, plane)
    assert full.m == 9
    assert all(len(nbrs) == 3 for nbrs in full.adj_left)
    empty = w3.auxiliary_graph(EdgeMask.empty(w3), 0, 1, plane)
    assert empty.m == 0


def test_auxiliary_graph_minus_one_point(w3):
    # deleting all incidences at one plane point removes exactly one crossing
    plane = PlaneId(0, 1, (0, 0, 0))
    mask = EdgeMask.full(w3)
    x = w3.point_index((0, 0, 0, 0, 0))
    for cls in range(w3.q):
        mask.remove(w3.edge_index(x, cls))
    aux = w3.auxiliary_graph(mask, 0, 1, plane)
    assert aux.m == 8
    lefts = w3.lines_in_plane(plane, 0)
    rights = w3.lines_in_plane(plane, 1)
    missing_left = lefts.index(w3.line_through_index(x, 0))
    missing_right = rights.index(w3.line_through_index(x, 1))
    assert not aux.has_edge(missing_left, missing_right)


def test_crossing_table_agrees_with_auxiliary_graph(w3):
    mask = EdgeMask.sample(w3, 0.6, 31)
    for i, j in w3.class_pairs():
        table = w3.crossing_table(i, j)
        for rank, (lefts, rights, cells) in enumerate(table):
            plane = w3.plane_from_rank(i, j, rank)
            assert tuple(w3.lines_in_plane(plane, i)) == lefts
            assert tuple(w3.lines_in_plane(plane, j)) == rights
            direct = w3.auxiliary_graph(mask, i, j, plane)
            from_table = {
                (lp, rp)
                for lp, rp, x in cells
                if mask.contains(w3.edge_index(x, i)) and mask.contains(w3.edge_index(x, j))
            }
            assert set(direct.edges()) == from_table


def test_crossing_table_covers_all_points(w3):
    table = w3.crossing_table(1, 2)
    seen = set()
    for _, _, cells in table:
        for _, _, x in cells:
            seen.add(x)
    assert len(seen) == w3.n_points


def test_edge_mask_basics(w3):
    mask = EdgeMask.empty(w3)
    assert len(mask) == 0
    mask.add(5)
    mask.add(5)
    assert len(mask) == 1 and mask.contains(5)
    mask.remove(5)
    mask.remove(5)
    assert len(mask) == 0 and not mask.contains(5)
    full = EdgeMask.full(w3)
    assert len(full) == w3.n_edges
    assert list(full.iter_edges()) == list(range(w3.n_edges))


@given(st.floats(0.0, 1.0), st.integers(0, 2**32))
@settings(max_examples=20)
def test_mask_sampling_matches_graph_subsampling(keep, seed):
    host = build_wenger(2)
    mask = EdgeMask.sample(host, keep, seed)
    sub = random_edge_subgraph(host.graph, keep, seed)
    assert mask.to_bipartite(host).m == sub.m
    assert list(mask.to_bipartite(host).edges()) == list(sub.edges())


def test_smallest_q_with_c8_is_two(w2):
    # every vertex of W_5(2) has degree 2, so it is a disjoint union of
    # cycles; the search pins those cycles at length exactly 8
    res = find_cycle_of_length(w2.graph, 8)
    assert res.status == FOUND
    for length in (4, 6, 10):
        assert find_cycle_of_length(w2.graph, length).status == "none"


def test_export_and_vertex_names(w2, tmp_path):
    assert w2.vertex_name(0) == "P:0"
    assert w2.vertex_name(w2.n_points + 17) == "L:1:1"
    path = tmp_path / "w2.txt"
    w2.export(path)
    graph, extra = read_graph(path)
    assert graph.m == w2.graph.m
    assert extra == ("# wenger k=5 q=2 p=2 e=1 modulus=0,1",)
