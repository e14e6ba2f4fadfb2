from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import digraphs
from graphduality.convert import reverse_convert
from graphduality.core import Digraph, build_digraph, cyclomatic_number, transitive_closure, weak_component_labels
from graphduality.duality import Role, RoleMatrix, is_canonical, is_quasi_canonical
from graphduality.normalize import (
    NormalizationError,
    delta_n_insert,
    expand,
    normalize_canonical,
    quasi_normalize,
    reduce,
    replay_reduce,
)

FORK = build_digraph(4, [(0, 1), (0, 2), (3, 1)])
PATH = build_digraph(3, [(0, 1), (1, 2)], ["a", "b", "c"])


def restricted_closure(g: Digraph, n0: int) -> set:
    return {(u, v) for u, v in transitive_closure(g) if u < n0 and v < n0}


def restricted_components(g: Digraph, n0: int) -> list:
    # partition of the original vertexes induced by weak components
    lab = weak_component_labels(g)
    blocks: dict[int, list[int]] = {}
    for v in range(n0):
        blocks.setdefault(lab[v], []).append(v)
    return sorted(blocks.values())


def test_delta_n_insert_examples():
    g = delta_n_insert(RoleMatrix(PATH), (0, 1)).graph
    assert g.n == 4
    assert g.arcs == ((0, 3), (1, 2), (3, 1))
    assert g.label(3) == "x+1"
    assert delta_n_insert(RoleMatrix(FORK), (0, 1)).graph.arcs == ((0, 2), (0, 4), (3, 1), (4, 1))
    with pytest.raises(ValueError):
        delta_n_insert(RoleMatrix(PATH), (0, 2))


def test_quasi_normalize_examples():
    rep = quasi_normalize(RoleMatrix(PATH))
    assert rep.s_q == 0 and rep.converged and rep.rounds == 0
    rep = quasi_normalize(RoleMatrix(FORK))
    assert rep.steps == (((0, 1), 4),)
    assert is_quasi_canonical(rep.result).quasi_canonical


def test_normalize_canonical_examples():
    assert normalize_canonical(RoleMatrix(PATH)).s_q == 0
    rep = normalize_canonical(RoleMatrix(FORK))
    assert rep.steps == (((0, 1), 4),)
    assert is_canonical(rep.result).canonical
    # merge vertex 2 fed by 0 and 1, branching to 3 and 4: no branch-to-merge arc
    mb = build_digraph(5, [(0, 2), (1, 2), (2, 3), (2, 4)])
    rep = normalize_canonical(RoleMatrix(mb))
    assert rep.s_q == 0 and is_canonical(rep.result).canonical
    h = reverse_convert(rep.result.as_role(Role.R))
    assert cyclomatic_number(h) == cyclomatic_number(rep.result.graph)


def test_cap_is_an_explicit_error():
    knot = build_digraph(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 0)])
    with pytest.raises(NormalizationError) as err:
        normalize_canonical(RoleMatrix(knot), cap=0)
    assert not err.value.report.converged


def test_strategy_switch():
    with pytest.raises(ValueError):
        quasi_normalize(RoleMatrix(FORK), strategy="greedy")
    rep = quasi_normalize(RoleMatrix(FORK), strategy="immediate")
    assert is_quasi_canonical(rep.result).quasi_canonical


def test_reduce_examples():
    split = delta_n_insert(RoleMatrix(PATH), (0, 1))
    back = reduce(split)
    assert back.result.graph == PATH
    assert len(back.log) == 1
    assert expand(back.result, back.log).graph == split.graph
    # only inserted vertexes are candidates unless a full reduction is asked for
    assert reduce(RoleMatrix(PATH)).result.graph == PATH
    full = reduce(RoleMatrix(PATH), full=True).result.graph
    assert full.n == 2 and full.arcs == ((0, 1),)
    assert [full.label(v) for v in range(2)] == ["a", "c"]


def test_reduce_respects_requested_status():
    L = normalize_canonical(RoleMatrix(FORK)).result
    kept = reduce(L, keep="canonical")
    assert is_canonical(kept.result).canonical
    assert kept.result.graph == L.graph


def test_report_serializes():
    d = quasi_normalize(RoleMatrix(FORK)).to_dict()
    assert d["s_q"] == 1 and d["insertions"] == [{"arc": [0, 1], "vertex": 4}]
    assert d["s_q_is_n2_minus_1"] is False


@settings(max_examples=150)
@given(digraphs(max_n=8))
def test_quasi_normalize_properties(g):
    L = RoleMatrix(g)
    rep = quasi_normalize(L)
    out = rep.result.graph
    assert rep.converged
    assert out.n == g.n + rep.s_q
    assert (rep.s_q == 0) == is_quasi_canonical(L).quasi_canonical
    assert is_quasi_canonical(rep.result).quasi_canonical
    assert restricted_closure(out, g.n) == transitive_closure(g)
    assert restricted_components(out, g.n) == restricted_components(g, g.n)
    assert replay_reduce(rep).graph == g
    assert quasi_normalize(rep.result).s_q == 0


@settings(max_examples=150)
@given(digraphs(max_n=8))
def test_normalize_canonical_properties(g):
    rep = normalize_canonical(RoleMatrix(g))
    assert rep.converged
    assert is_canonical(rep.result).canonical
    assert restricted_closure(rep.result.graph, g.n) == transitive_closure(g)
    assert replay_reduce(rep).graph == g
    assert normalize_canonical(rep.result).s_q == 0


@settings(max_examples=100)
@given(digraphs(min_n=2, max_n=7))
def test_every_insertion_is_conservative_and_reducible(g):
    for arc in g.arcs:
        L = delta_n_insert(RoleMatrix(g), arc)
        assert restricted_closure(L.graph, g.n) == transitive_closure(g)
        assert reduce(L).result.graph == g
