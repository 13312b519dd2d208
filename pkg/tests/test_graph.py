from fractions import Fraction

import pytest
from hypothesis import given, settings

from colourbias.constructions import ConstructionSpec, build
from colourbias.graph import (
    EdgeColouring,
    Graph,
    GraphError,
    HamiltonCycle,
    LinearForest,
    Matching,
    colour_class,
    colour_count_in_cycle,
    complete_graph,
    cycle_graph,
    format_edgelist,
    parse_edgelist,
    path_graph,
    residual_ratio,
)

from conftest import coloured_graphs, graphs


def k3_mono() -> tuple[Graph, EdgeColouring]:
    G = complete_graph(3)
    return G, EdgeColouring(2, {e: 1 for e in G.edges()})


def test_graph_rejects_self_loop():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])


def test_graph_rejects_out_of_range_vertex():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


@given(graphs())
def test_adjacency_is_symmetric_and_degrees_sum(G):
    assert all(u in G.adj[v] for u in range(G.n) for v in G.adj[u])
    assert sum(G.degrees()) == 2 * G.num_edges


def test_colour_class_single_colour_gives_whole_graph():
    G, c = k3_mono()
    assert colour_class(G, c, 1).edges() == G.edges()


def test_colour_class_absent_colour_is_empty():
    G, c = k3_mono()
    H = colour_class(G, c, 2)
    assert H.n == 3 and H.num_edges == 0


def test_colour_class_out_of_range():
    G, c = k3_mono()
    with pytest.raises(GraphError):
        colour_class(G, c, 3)


def test_colour_class_on_large_construction_counts_by_rule():
    con = build(ConstructionSpec(6, 2, "large"))
    part = con.part_of
    expected = sum(1 for u in range(6) for v in range(u + 1, 6) if min(part[u], part[v], 2) == 1)
    assert colour_class(con.graph, con.colouring, 1).num_edges == expected


@given(coloured_graphs())
def test_colour_classes_partition_edges(gc):
    G, c = gc
    classes = [set(colour_class(G, c, i).edges()) for i in range(1, c.r + 1)]
    assert set().union(*classes) == set(G.edges())
    assert sum(len(x) for x in classes) == G.num_edges


def test_residual_ratio_identity():
    G = cycle_graph(7)
    assert residual_ratio(G, G) == 1


def test_residual_ratio_k4_minus_perfect_matching():
    G = complete_graph(4)
    H = G.without_edges([(0, 1), (2, 3)])
    assert residual_ratio(G, H) == Fraction(2, 3)


def test_residual_ratio_k5_cycle():
    assert residual_ratio(complete_graph(5), cycle_graph(5)) == Fraction(1, 2)


def test_residual_ratio_rejects_non_subgraph():
    with pytest.raises(GraphError):
        residual_ratio(path_graph(4), cycle_graph(4))


def test_colour_count_monochromatic_c5():
    G = cycle_graph(5)
    c = EdgeColouring(1, {e: 1 for e in G.edges()})
    assert colour_count_in_cycle(HamiltonCycle((0, 1, 2, 3, 4)), c) == {1: 5}


def test_colour_count_alternating_c4():
    c = EdgeColouring(2, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2})
    assert colour_count_in_cycle(HamiltonCycle((0, 1, 2, 3)), c) == {1: 2, 2: 2}


def test_colour_count_missing_edge_raises():
    c = EdgeColouring(2, {(0, 1): 1, (1, 2): 2})
    with pytest.raises(GraphError):
        colour_count_in_cycle(HamiltonCycle((0, 1, 2)), c)


def test_colour_count_small_construction_colour_one():
    con = build(ConstructionSpec(12, 2, "small", Fraction(2, 3)))
    # a Hamilton cycle alternating V_1 and V_2 as long as V_1 lasts
    v1, v2 = con.members(1), con.members(2)
    order = []
    for a, b in zip(v1, v2):
        order += [b, a]
    order += v2[len(v1):]
    cyc = HamiltonCycle(tuple(order))
    cyc.check_in(con.graph)
    assert colour_count_in_cycle(cyc, con.colouring)[1] == 8


def test_matching_rejects_shared_vertex():
    with pytest.raises(GraphError):
        Matching.of([(0, 1), (1, 2)])


def test_linear_forest_rejects_overlap_and_cycles():
    with pytest.raises(GraphError):
        LinearForest.of([(0, 1, 2), (2, 3)])
    with pytest.raises(GraphError):
        LinearForest.from_edges([(0, 1), (1, 2), (0, 2)])


def test_linear_forest_size_counts_edges():
    F = LinearForest.of([(0, 1, 2), (3, 4), (5,)])
    assert F.size == 3
    assert F.spanned == frozenset(range(6))


def test_hamilton_cycle_check_in():
    HamiltonCycle((0, 1, 2, 3)).check_in(cycle_graph(4))
    with pytest.raises(GraphError):
        HamiltonCycle((0, 2, 1, 3)).check_in(cycle_graph(4))
    HamiltonCycle((0, 2, 1, 3)).check_in(cycle_graph(4), extra=[(0, 2), (1, 3)])


@settings(max_examples=60)
@given(coloured_graphs(min_n=1))
def test_edgelist_round_trip(gc):
    G, c = gc
    H, d = parse_edgelist(format_edgelist(G, c))
    assert H == G
    assert d is not None and d.r == c.r
    assert all(d.colour(*e) == c.colour(*e) for e in G.edges())


def test_edgelist_header_mismatch():
    with pytest.raises(GraphError):
        parse_edgelist("3 2\n0 1\n")
