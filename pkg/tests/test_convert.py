from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import assume, given, settings

from conftest import digraphs, to_nx
from graphduality.classify import delta_nu
from graphduality.convert import (
    AugmentError,
    ReverseConvertError,
    augment_entrance_exit,
    iterate_convert,
    label_table,
    paths_of_length,
    reverse_convert,
    reverse_convert_with_map,
    roundtrip_isomorphism,
    straight_convert,
    tokens_text,
)
from graphduality.core import (
    build_digraph,
    cyclomatic_number,
    is_single_entrance_exit,
    is_weakly_connected,
    sinks,
    sources,
    weak_components,
)
from graphduality.corpus import random_single_entrance_exit
from graphduality.duality import Role, RoleMatrix, is_quasi_canonical

PATH = build_digraph(3, [(0, 1), (1, 2)], ["A", "B", "C"])


def test_straight_convert_of_a_path():
    g = straight_convert(PATH)
    assert g.n == 2 and g.arcs == ((0, 1),)
    assert g.labels == ("AB", "BC")


def test_reverse_convert_rejects_non_line_digraphs():
    fork = build_digraph(4, [(0, 1), (0, 2), (3, 1)])
    with pytest.raises(ReverseConvertError, match="quasi-canonical"):
        reverse_convert(RoleMatrix(fork, Role.R))
    # two vertexes with the same in- and out-sets need parallel root arcs
    twins = build_digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    with pytest.raises(ReverseConvertError, match="parallel"):
        reverse_convert(RoleMatrix(twins, Role.R))
    with pytest.raises(ReverseConvertError):
        reverse_convert(RoleMatrix(PATH, Role.F))


def test_augmentation():
    g, toks = augment_entrance_exit(PATH, tag=1)
    assert g.n == 5 and g.has_arc(3, 0) and g.has_arc(2, 4)
    assert toks[3] == ("ω1",) and toks[4] == ("φ1",)
    with pytest.raises(AugmentError):
        augment_entrance_exit(build_digraph(3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(AugmentError):
        augment_entrance_exit(build_digraph(3, [(0, 2), (1, 2)]))


def test_auto_augmentation_only_where_needed():
    # entrance 0 feeds 1, which branches to 2 and 3; they merge at 4, exit 5
    g = build_digraph(6, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)])
    auto = iterate_convert(g, 2, "auto")
    none = iterate_convert(g, 2, "none")
    faithful = iterate_convert(g, 2, "faithful")
    assert all(s.added == () for s in none.steps)
    assert all(len(s.added) == 2 for s in faithful.steps[1:])
    for s in auto.steps[1:]:
        src, snk = sources(s.graph), sinks(s.graph)
        assert all(s.graph.outdeg(v) == 1 for v in src)
        assert all(s.graph.indeg(v) == 1 for v in snk)
    with pytest.raises(ValueError):
        iterate_convert(g, 1, "sometimes")


def test_size_cap_stops_the_trace():
    k3 = build_digraph(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)])
    trace = iterate_convert(k3, 10, cap=100)
    assert trace.cap_event is not None
    assert trace.cap_event.predicted_size > 100
    assert trace.steps[-1].n <= 100
    assert trace.sizes == [6 * 2 ** (j - 1) if j else 3 for j in range(len(trace.steps))]


def test_label_table_shape():
    trace = iterate_convert(PATH, 1, "none")
    assert label_table(trace.steps[1]) == [(0, "01", "12", "012")]
    assert tokens_text(("ω1", 2)) == "ω1.2"


def test_paths_of_length():
    tri = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert paths_of_length(tri, 3) == [(0, 1, 2, 0), (1, 2, 0, 1), (2, 0, 1, 2)]
    assert paths_of_length(tri, 0) == [(0,), (1,), (2,)]
    with pytest.raises(ValueError):
        paths_of_length(tri, -1)


def test_roundtrip_reports_isolated_vertexes():
    ok, detail = roundtrip_isomorphism(build_digraph(3, [(0, 1)]))
    assert not ok and "isolated" in detail
    assert roundtrip_isomorphism(PATH) == (True, "isomorphic")


@settings(max_examples=200)
@given(digraphs())
def test_straight_convert_matches_networkx_line_graph(g):
    line = straight_convert(g)
    expected = nx.line_graph(to_nx(g))
    index = g.arc_index()
    assert line.n == g.m
    assert set(line.arcs) == {(index[a], index[b]) for a, b in expected.edges()}


@settings(max_examples=200)
@given(digraphs())
def test_cyclomatic_growth_identity(g):
    # exact for every graph once sources, sinks and components are counted
    line = straight_convert(g)
    total = sum((g.indeg(v) - 1) * (g.outdeg(v) - 1) for v in range(g.n))
    assert cyclomatic_number(line) - cyclomatic_number(g) == total + weak_components(line) - weak_components(g)
    terminals_ok = all(g.outdeg(v) <= 1 for v in sources(g)) and all(g.indeg(v) <= 1 for v in sinks(g))
    if is_weakly_connected(g) and terminals_ok and g.m:
        assert cyclomatic_number(line) - cyclomatic_number(g) == delta_nu(g)


def test_growth_identity_needs_single_arc_terminals():
    # source 0 sends two arcs: the identity over inner vertexes undercounts
    diamond = build_digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    gap = cyclomatic_number(straight_convert(diamond)) - cyclomatic_number(diamond)
    assert delta_nu(diamond) == 0 and gap == -1


@settings(max_examples=200)
@given(digraphs())
def test_roundtrip_exactly_when_terminals_are_unsplit(g):
    expected = (
        all(g.indeg(v) + g.outdeg(v) > 0 for v in range(g.n))
        and all(g.outdeg(v) <= 1 for v in sources(g))
        and all(g.indeg(v) <= 1 for v in sinks(g))
    )
    ok, _ = roundtrip_isomorphism(g)
    assert ok == expected
    if expected:
        h = reverse_convert(RoleMatrix(straight_convert(g), Role.R))
        assert nx.is_isomorphic(to_nx(h), to_nx(g))


@settings(max_examples=200)
@given(digraphs())
def test_straight_after_reverse_is_identity(g):
    R = RoleMatrix(g, Role.R)
    assume(is_quasi_canonical(R.as_role(Role.L)).quasi_canonical)
    try:
        h, arc_of = reverse_convert_with_map(R)
    except ReverseConvertError:
        assume(False)
    index = h.arc_index()
    pos = [index[arc_of[r]] for r in range(g.n)]
    line = straight_convert(h)
    assert {(pos[a], pos[b]) for a, b in g.arcs} == set(line.arcs)


@settings(max_examples=100)
@given(digraphs(max_n=6))
def test_labels_are_exactly_the_walks(g):
    trace = iterate_convert(g, 3, "none")
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.arcs:
        a[u, v] = 1
    for step in trace.steps:
        j = step.index
        walks = paths_of_length(g, j)
        assert sorted(step.tokens) == walks
        assert len(walks) == (np.linalg.matrix_power(a, j).sum() if g.n else 0)
        for w in walks:
            assert all(g.has_arc(u, v) for u, v in zip(w, w[1:]))


@settings(max_examples=100)
@given(digraphs(max_n=6))
def test_vertex_count_law(g):
    for mode in ("none", "faithful"):
        if mode == "faithful" and not is_single_entrance_exit(g):
            continue
        trace = iterate_convert(g, 3, mode, cap=5000)
        for prev, cur in zip(trace.steps, trace.steps[1:]):
            assert cur.n == prev.m + (2 if mode == "faithful" else 0)


def test_converted_graphs_reverse_convert_as_often_as_converted():
    import random

    rng = random.Random(11)
    for _ in range(40):
        g = random_single_entrance_exit(rng, rng.randint(3, 6), 0.3)
        trace = iterate_convert(g, 3, "faithful")
        last, prev = trace.steps[-1], trace.steps[-2]
        # one reversal gives the previous graph with a pendant arc at each end
        expected = to_nx(prev.graph)
        expected.add_edge("in", sources(prev.graph)[0])
        expected.add_edge(sinks(prev.graph)[0], "out")
        cur = reverse_convert(RoleMatrix(last.graph, Role.R))
        assert nx.is_isomorphic(to_nx(cur), expected)
        for _ in range(2):
            cur = reverse_convert(RoleMatrix(cur, Role.R))
        assert cyclomatic_number(cur) == cyclomatic_number(g)
