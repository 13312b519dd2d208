from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import strategies as st

from colourbias.graph import EdgeColouring, Graph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def coloured_graphs(draw, min_n: int = 2, max_n: int = 9, r_values=(2, 3)):
    G = draw(graphs(min_n, max_n))
    r = draw(st.sampled_from(r_values))
    cols = draw(st.lists(st.integers(1, r), min_size=G.num_edges, max_size=G.num_edges))
    return G, EdgeColouring(r, dict(zip(G.edges(), cols)))


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def petersen() -> Graph:
    g = nx.petersen_graph()
    return Graph.from_edges(10, g.edges())


# acceptance reporting: each criterion records one line, echoed after the run

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance():
    def report(number: int, title: str, ok: bool, detail: str) -> bool:
        line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
