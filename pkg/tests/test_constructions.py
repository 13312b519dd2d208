from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colourbias.constructions import (
    ConstructionSpec,
    boosted_alpha,
    build,
    colour_bias_target,
    cycle_bound,
    extremal_spec,
    intersect_with_host,
    matching_bound,
    part_sizes,
    residual_margin,
    verify_cycle_bias_upper,
    verify_matching_bias_upper,
)
from colourbias.exhaustive import cycle_colour_extremes, hamilton_cycles, matching_colour_max, perfect_matchings
from colourbias.graph import EdgeColouring, Graph, GraphError, HamiltonCycle, complete_graph
from colourbias.random_process import sample_gnp


def test_small_construction_example():
    con = build(ConstructionSpec(12, 2, "small", Fraction(2, 3)))
    assert con.sizes() == [4, 8]
    assert con.graph.min_degree() == 8
    colour1 = [e for e in con.graph.edges() if con.colouring.colour(*e) == 1]
    v1, v2 = set(con.members(1)), set(con.members(2))
    assert len(colour1) == 32
    assert all((u in v1) != (v in v1) and {u, v} <= v1 | v2 for u, v in colour1)


def test_large_construction_is_complete_with_equal_parts():
    con = build(ConstructionSpec(6, 2, "large"))
    assert con.graph == complete_graph(6)
    assert con.sizes() == [2, 2, 2]


def test_medium_construction_min_degree():
    con = build(ConstructionSpec(12, 2, "med", Fraction(3, 4)))
    assert con.graph.min_degree() == 9


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=12, r=2, variant="small", alpha=Fraction(5, 7)),
        dict(n=12, r=2, variant="med", alpha=Fraction(1)),
        dict(n=12, r=2, variant="small"),
        dict(n=12, r=1, variant="large"),
        dict(n=2, r=2, variant="large"),
        dict(n=12, r=2, variant="huge"),
    ],
)
def test_bad_specs_rejected(kwargs):
    with pytest.raises(GraphError):
        build(ConstructionSpec(**kwargs))


def test_empty_part_rejected():
    # r=4 small variant with alpha*n = n-1 leaves 1 vertex for 3 blocks
    with pytest.raises(GraphError):
        part_sizes(ConstructionSpec(8, 4, "small", Fraction(7, 8)))


@settings(max_examples=60)
@given(st.integers(4, 30), st.integers(2, 4), st.sampled_from(["small", "med", "large"]), st.data())
def test_part_sizes_sum_to_n_and_degree_matches(n, r, variant, data):
    an = data.draw(st.integers(1, n - 1))
    try:
        spec = ConstructionSpec(n, r, variant, None if variant == "large" else Fraction(an, n))
        con = build(spec)
    except GraphError:
        return
    assert sum(con.sizes()) == n
    if variant in ("small", "med"):
        assert con.graph.min_degree() == spec.alpha_n


def test_target_alpha_one():
    assert colour_bias_target(12, 2, 1).k == 8


def test_target_three_quarters():
    t = colour_bias_target(12, 2, Fraction(3, 4))
    assert t.k == 6 and t.terms == (6, 9, 8)


def test_target_empty_graph():
    assert colour_bias_target(0, 3, 1).k == 0


def test_target_alpha_out_of_range():
    with pytest.raises(GraphError):
        colour_bias_target(12, 2, Fraction(1, 2))


def test_cycle_bound_large_n6_over_all_cycles():
    con = build(ConstructionSpec(6, 2, "large"))
    k = colour_bias_target(6, 2, 1).k
    cycles = list(hamilton_cycles(con.graph))
    assert len(cycles) == 60
    assert cycle_bound(k) == 4
    assert all(verify_cycle_bias_upper(con.graph, con.colouring, c, k) for c in cycles)


def test_small_construction_colour_r_count_is_exact():
    con = build(ConstructionSpec(12, 2, "small", Fraction(2, 3)))
    assert cycle_colour_extremes(con.graph, con.colouring, 2) == (4, 4)


def test_cycle_bound_rejects_one_colour():
    G = complete_graph(4)
    c = EdgeColouring(1, {e: 1 for e in G.edges()})
    with pytest.raises(GraphError):
        verify_cycle_bias_upper(G, c, HamiltonCycle((0, 1, 2, 3)), Fraction(4))


def test_perfect_matching_maximum_on_medium_construction():
    con = build(ConstructionSpec(12, 2, "med", Fraction(3, 4)))
    maxima = [matching_colour_max(con.graph, con.colouring, i) for i in (1, 2)]
    assert maxima == [5, 3]
    assert max(maxima) <= 5
    # ceil(k/2) = 3 with k = 6 is exceeded by some perfect matching
    worst = max(perfect_matchings(con.graph), key=lambda m: sum(con.colouring.colour(*e) == 1 for e in m.edges))
    assert not verify_matching_bias_upper(con.graph, con.colouring, worst, Fraction(6))
    assert verify_matching_bias_upper(con.graph, con.colouring, worst, Fraction(9))


def test_perfect_matching_colour_two_on_large_n6():
    con = build(ConstructionSpec(6, 2, "large"))
    assert matching_colour_max(con.graph, con.colouring, 2) == 2
    assert matching_bound(colour_bias_target(6, 2, 1).k) == 2


def test_matching_bound_odd_n_rejected():
    con = build(ConstructionSpec(7, 2, "large"))
    from colourbias.graph import Matching

    with pytest.raises(GraphError):
        verify_matching_bias_upper(con.graph, con.colouring, Matching.of([(0, 1)]), Fraction(4))


def test_intersect_with_itself():
    con = build(ConstructionSpec(9, 2, "small", Fraction(2, 3)))
    H, c, ratio = intersect_with_host(con.graph, con.colouring, con.graph)
    assert H == con.graph and ratio == 1
    assert dict(c.colour_of) == dict(con.colouring.colour_of)


def test_intersect_with_edgeless_host():
    con = build(ConstructionSpec(9, 2, "large"))
    H, _, ratio = intersect_with_host(con.graph, con.colouring, Graph.empty(9))
    assert H.num_edges == 0 and ratio == 1


def test_intersect_vertex_mismatch():
    con = build(ConstructionSpec(9, 2, "large"))
    with pytest.raises(GraphError):
        intersect_with_host(con.graph, con.colouring, Graph.empty(8))


def test_intersect_large_construction_keeps_random_host():
    con = build(ConstructionSpec(200, 2, "large"))
    ratios = [intersect_with_host(con.graph, con.colouring, sample_gnp(200, 0.3, s))[2] for s in range(5)]
    assert ratios == [1] * 5


def test_intersect_ratio_is_minimum_degree_ratio():
    con = build(ConstructionSpec(60, 2, "med", Fraction(3, 4)))
    G = sample_gnp(60, 0.3, 1)
    H, _, ratio = intersect_with_host(con.graph, con.colouring, G)
    direct = min(Fraction(H.degree(v), G.degree(v)) for v in range(60) if G.degree(v))
    assert ratio == direct < 1


def test_boosted_alpha_within_window():
    a, eps = Fraction(3, 4), Fraction(1, 4)
    d = residual_margin(a, eps)
    b = boosted_alpha(600, a, eps)
    assert (1 + d) * a <= b <= (1 + 2 * d) * a
    assert (b * 600).denominator == 1


def test_extremal_spec_regime():
    assert extremal_spec(12, 2, Fraction(3, 4)).variant == "small"
    assert extremal_spec(12, 2, 1).variant == "large"
