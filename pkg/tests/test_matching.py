from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from colourbias.constructions import ConstructionSpec, build
from colourbias.exhaustive import brute_force_matching_number
from colourbias.graph import EdgeColouring, Graph, GraphError, complete_graph, path_graph
from colourbias.matching import (
    BoundViolation,
    ceil_fraction,
    component_bounds_check,
    matching_number,
    max_matching,
    max_mono_matching,
    mono_matching_bound,
    odd_components,
    tutte_berge_witness,
)

from conftest import coloured_graphs, graphs, petersen, to_nx


def test_k4_matching():
    assert matching_number(complete_graph(4)) == 2


def test_path5_matching():
    assert matching_number(path_graph(5)) == 2


def test_petersen_matching_matches_brute_force():
    G = petersen()
    assert matching_number(G) == brute_force_matching_number(G) == 5


@given(graphs(max_n=10))
def test_blossom_agrees_with_networkx(G):
    M = max_matching(G)
    M.check_in(G)
    assert len(M) == len(nx.max_weight_matching(to_nx(G), maxcardinality=True))


@settings(max_examples=50)
@given(graphs(max_n=8))
def test_blossom_agrees_with_brute_force(G):
    assert matching_number(G) == brute_force_matching_number(G)


def test_witness_k4():
    w = tutte_berge_witness(complete_graph(4))
    assert w.U == frozenset() and w.deficiency == 0 and w.certifies


def test_witness_star():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    w = tutte_berge_witness(star)
    assert w.U == frozenset({0})
    assert (w.odd_components, w.deficiency, w.matching_size) == (3, 2, 1)


def test_witness_triangle_plus_isolated():
    G = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    w = tutte_berge_witness(G)
    assert (w.deficiency, w.matching_size) == (2, 1)


@settings(max_examples=80)
@given(graphs(max_n=10))
def test_witness_certifies_matching_number(G):
    w = tutte_berge_witness(G)
    assert w.certifies
    assert odd_components(G, w.U) - len(w.U) == w.deficiency


@settings(max_examples=25)
@given(graphs(min_n=21, max_n=26))
def test_structural_witness_on_larger_graphs(G):
    w = tutte_berge_witness(G)
    assert w.method != "exhaustive"
    assert w.certifies


def test_mono_matching_all_one_colour_k7():
    G = complete_graph(7)
    colour, M = max_mono_matching(G, EdgeColouring(2, {e: 1 for e in G.edges()}))
    assert (colour, len(M)) == (1, 3)


def test_mono_matching_medium_construction():
    con = build(ConstructionSpec(12, 2, "med", Fraction(3, 4)))
    _, M = max_mono_matching(con.graph, con.colouring)
    assert 4 <= len(M) <= 5
    assert len(M) == 5  # exact value by per-colour maximum matching


def test_mono_matching_large_construction_n7():
    con = build(ConstructionSpec(7, 2, "large"))
    _, M = max_mono_matching(con.graph, con.colouring)
    assert len(M) <= 2
    assert len(M) == max(brute_force_matching_number(con.graph.without_edges(
        [e for e in con.graph.edges() if con.colouring.colour(*e) != i])) for i in (1, 2))


def test_mono_matching_empty_graph():
    G = Graph.empty(4)
    colour, M = max_mono_matching(G, EdgeColouring(2, {}))
    assert len(M) == 0


@pytest.mark.parametrize(
    "n,r,d,expected",
    [(10, 2, 6, Fraction(3)), (10, 3, 9, Fraction(9, 4)), (2, 1, 1, Fraction(1, 2))],
)
def test_mono_matching_bound_values(n, r, d, expected):
    assert mono_matching_bound(n, r, d) == expected


def test_mono_matching_bound_single_edge_guarantees_one():
    assert ceil_fraction(mono_matching_bound(2, 1, 1)) == 1


def test_mono_matching_bound_degree_out_of_range():
    with pytest.raises(GraphError):
        mono_matching_bound(5, 2, 5)


@settings(max_examples=150)
@given(coloured_graphs(min_n=2, max_n=10, r_values=(2, 3, 4)))
def test_mono_matching_meets_guarantee(gc):
    G, c = gc
    # check=True raises BoundViolation on a miss
    max_mono_matching(G, c, check=True)


def test_bound_violation_is_raised_for_bad_bound(monkeypatch):
    import colourbias.matching as m

    monkeypatch.setattr(m, "mono_matching_bound", lambda n, r, d: Fraction(n))
    G = complete_graph(4)
    with pytest.raises(BoundViolation):
        m.max_mono_matching(G, EdgeColouring(2, {e: 1 for e in G.edges()}))


def test_component_bounds_edgeless():
    rep = component_bounds_check(Graph.empty(5))
    assert (rep.components, rep.harmonic_bound, rep.edges, rep.edge_bound) == (5, 5, 0, 0)


def test_component_bounds_k4():
    rep = component_bounds_check(complete_graph(4))
    assert (rep.components, rep.harmonic_bound, rep.edges, rep.edge_bound) == (1, 1, 6, 6)


def test_component_bounds_two_triangles():
    G = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    rep = component_bounds_check(G)
    assert (rep.components, rep.harmonic_bound, rep.edges, rep.edge_bound) == (2, 2, 6, 10)


@given(graphs(max_n=10))
def test_component_bounds_always_hold(G):
    component_bounds_check(G)
