from __future__ import annotations

from pathlib import Path

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphduality.core import Digraph, build_digraph

# fixed example sequence so every run sees the same graphs
settings.register_profile(
    "repro", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.filter_too_much]
)
settings.load_profile("repro")

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

# filled by the acceptance tests, printed once at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@st.composite
def digraphs(draw, min_n: int = 0, max_n: int = 7) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not pairs:
        return build_digraph(n, [])
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return build_digraph(n, chosen)


def to_nx(g: Digraph) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from(range(g.n))
    d.add_edges_from(g.arcs)
    return d


def from_text(text: str) -> Digraph:
    from graphduality.io import parse

    return parse(text)


@pytest.fixture
def nu4_knot() -> Digraph:
    from graphduality.io import read_graph

    return read_graph(str(SAMPLES / "nu4_knot.txt"))
