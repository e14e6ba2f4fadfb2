"""Hamilton cycles of a vertex graph through Euler partial graphs of its edge graph.

The vertex graph ``G`` is normalized by arc subdivision and reverse-converted
to an edge graph ``H`` in which every vertex of ``G`` is an arc.  A Hamilton
cycle of ``G`` is then a single circuit of ``H`` that passes every such
marked arc and meets each of its vertexes once (one arc in, one arc out).
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Digraph
from .convert import ReverseConvertError, reverse_convert_with_map
from .duality import Role, RoleMatrix
from .normalize import NormalizationReport, delta_n_insert, normalize_canonical, quasi_normalize


@dataclass(frozen=True)
class MarkedEdgeGraph:
    h: Digraph
    marked: frozenset[int]  # arc ids of h
    provenance: dict[int, int]  # marked arc id -> vertex of the original graph
    normalization: NormalizationReport
    original_order: int


@dataclass(frozen=True)
class EulerPartialSubgraph:
    arcs: tuple[int, ...]  # arc ids of h, in circuit order from the first marked arc
    vertexes: frozenset[int]


def _twin_arcs(g: Digraph) -> list[tuple[int, int]]:
    """In-arcs of vertexes that share both neighbour sets with a smaller vertex.

    Such twins reverse-convert to parallel arcs.
    """
    first: dict[tuple, int] = {}
    out = []
    for v in range(g.n):
        if not g.pred(v) or not g.succ(v):
            continue
        key = (g.pred(v), g.succ(v))
        if key in first:
            out.extend((p, v) for p in g.pred(v))
        else:
            first[key] = v
    return out


def _normalize_for_root(G: Digraph, form: str) -> NormalizationReport:
    norm = normalize_canonical if form == "canonical" else quasi_normalize
    L = RoleMatrix(G)
    steps: list = []
    rounds = 0
    cap = 10 * G.n * G.n
    while True:
        rep = norm(L, cap=max(cap - len(steps), 0))
        steps.extend(rep.steps)
        rounds += rep.rounds
        twins = _twin_arcs(rep.result.graph)
        if not twins:
            return NormalizationReport(rep.target, G.n, tuple(steps), rounds, True, rep.result, cap)
        L = rep.result
        for arc in twins:
            steps.append((arc, L.order))
            L = delta_n_insert(L, arc)
        rounds += 1


def build_marked_edge_graph(G: Digraph, form: str = "canonical") -> MarkedEdgeGraph:
    """Normalize ``G``, reverse-convert it, and mark the arcs of its original vertexes.

    ``form`` selects canonical (default) or quasi-canonical normalization.
    Vertexes whose in- and out-neighbour sets coincide are split as well, so
    the edge graph never needs parallel arcs.
    """
    if form not in ("canonical", "quasi"):
        raise ValueError(f"unknown form {form!r}")
    report = _normalize_for_root(G, form)
    h, arc_of = reverse_convert_with_map(report.result.as_role(Role.R))
    index = h.arc_index()
    provenance = {index[arc_of[v]]: v for v in range(G.n)}
    return MarkedEdgeGraph(h, frozenset(provenance), provenance, report, G.n)


def euler_partial_subgraphs(M: MarkedEdgeGraph) -> list[EulerPartialSubgraph]:
    """Every single circuit of ``M.h`` that contains all marked arcs.

    Each touched vertex has exactly one arc in and one arc out.  Backtracking
    from the first marked arc; a vertex that is the tail (head) of a marked
    arc may only be left (entered) along that arc.
    """
    h = M.h
    if not M.marked:
        return []
    marked_out = {h.arcs[a][0]: a for a in M.marked}
    marked_in = {h.arcs[a][1]: a for a in M.marked}
    out_arcs: list[list[int]] = [[] for _ in range(h.n)]
    for i, (u, _) in enumerate(h.arcs):
        out_arcs[u].append(i)
    start = min(M.marked)
    t0, h0 = h.arcs[start]
    found: list[EulerPartialSubgraph] = []
    path = [start]
    visited = {t0, h0}

    def extend(v: int, marked_seen: int) -> None:
        if v in marked_out:
            choices = [marked_out[v]]
        else:
            choices = out_arcs[v]
        for a in choices:
            w = h.arcs[a][1]
            if marked_in.get(w, a) != a:
                continue
            seen = marked_seen + (a in M.marked)
            if w == t0:
                if seen == len(M.marked):
                    arcs = path + [a]
                    verts = frozenset(h.arcs[x][0] for x in arcs)
                    found.append(EulerPartialSubgraph(tuple(arcs), verts))
                continue
            if w in visited:
                continue
            visited.add(w)
            path.append(a)
            extend(w, seen)
            path.pop()
            visited.discard(w)

    if h0 == t0:
        return []
    extend(h0, 1)
    found.sort(key=lambda e: sorted(e.arcs))
    return found


def _as_cycle(M: MarkedEdgeGraph, sub: EulerPartialSubgraph) -> tuple[int, ...]:
    seq = [M.provenance[a] for a in sub.arcs if a in M.marked]
    k = seq.index(min(seq))
    seq = seq[k:] + seq[:k]
    return tuple(seq) + (seq[0],)


def hamilton_cycles_via_duality(G: Digraph, form: str = "canonical") -> list[tuple[int, ...]]:
    """Hamilton cycles of ``G`` as closed vertex sequences starting at vertex 0."""
    if G.n < 2:
        return []
    M = build_marked_edge_graph(G, form)
    return sorted(_as_cycle(M, sub) for sub in euler_partial_subgraphs(M))


class OracleBoundError(ValueError):
    pass


def brute_force_hamilton(G: Digraph, bound: int = 10) -> list[tuple[int, ...]]:
    """Exhaustive Hamilton cycle enumeration, each cycle rotated to start at 0."""
    if G.n > bound:
        raise OracleBoundError(f"n={G.n} exceeds the oracle bound {bound}")
    if G.n < 2:
        return []
    full = (1 << G.n) - 1
    cycles = []

    def dfs(v: int, mask: int, path: list[int]) -> None:
        if mask == full:
            if G.has_arc(v, 0):
                cycles.append(tuple(path) + (0,))
            return
        for w in G.succ(v):
            if not mask >> w & 1:
                path.append(w)
                dfs(w, mask | 1 << w, path)
                path.pop()

    dfs(0, 1, [0])
    return sorted(cycles)


def is_hamilton_cycle(G: Digraph, cycle: tuple[int, ...]) -> bool:
    if len(cycle) != G.n + 1 or cycle[0] != cycle[-1]:
        return False
    if sorted(cycle[:-1]) != list(range(G.n)):
        return False
    return all(G.has_arc(u, v) for u, v in zip(cycle, cycle[1:]))


__all__ = [
    "EulerPartialSubgraph",
    "MarkedEdgeGraph",
    "OracleBoundError",
    "ReverseConvertError",
    "brute_force_hamilton",
    "build_marked_edge_graph",
    "euler_partial_subgraphs",
    "hamilton_cycles_via_duality",
    "is_hamilton_cycle",
]
