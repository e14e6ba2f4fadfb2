"""Straight and reverse converting between edge graphs and vertex graphs.

Straight converting is the directed line graph: every arc of ``H`` becomes a
vertex, and arc ``a`` is joined to arc ``b`` when ``a`` ends where ``b``
starts.  Reverse converting rebuilds the root graph from such an adjacency
pattern.

Vertexes of converted graphs carry *tokens*: the walk in the first graph of
a trace that the vertex stands for, as a tuple of original vertex ids plus
generated entrance/exit symbols (``"ω1"``, ``"φ1"``, ``"ω2"``, ...).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Arc,
    Digraph,
    GraphError,
    _trusted,
    cyclomatic_number,
    sinks,
    sources,
)
from .duality import Role, RoleMatrix, is_quasi_canonical

Token = int | str
Tokens = tuple[Token, ...]

DEFAULT_SIZE_CAP = 10**6
AUGMENT_MODES = ("none", "auto", "faithful")


class AugmentError(GraphError):
    pass


class ReverseConvertError(GraphError):
    pass


def tokens_text(tokens: Tokens) -> str:
    parts = [str(t) for t in tokens]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ".".join(parts)


def initial_tokens(h: Digraph) -> tuple[Tokens, ...]:
    return tuple((v,) for v in range(h.n))


def straight_convert_tokens(h: Digraph, tokens: Sequence[Tokens]) -> tuple[Digraph, tuple[Tokens, ...]]:
    """Line graph of ``h`` together with the walk tokens of its vertexes.

    Vertex ``i`` of the result is ``h.arcs[i]``; its tokens are the tail's
    tokens extended by the last token of the head.
    """
    arcs = h.arcs
    # arcs are sorted by tail, so the out-arcs of v occupy one contiguous block
    start = [0] * (h.n + 1)
    for u, _ in arcs:
        start[u + 1] += 1
    for v in range(h.n):
        start[v + 1] += start[v]
    new_arcs = [(ia, ib) for ia, (_, v) in enumerate(arcs) for ib in range(start[v], start[v + 1])]
    new_tokens = tuple(tokens[u] + tokens[v][-1:] for u, v in arcs)
    labels = [tokens_text(t) for t in new_tokens]
    return Digraph(len(arcs), tuple(new_arcs), tuple(labels) if labels else None), new_tokens


def straight_convert(h: Digraph) -> Digraph:
    """Directed line graph of ``h``.

    Vertex ``i`` of the result is arc ``h.arcs[i]``, labelled with the pair of
    its endpoints' labels (collapsed to a token string such as ``"AB"``).
    """
    if h.labels is None:
        tokens: list[Tokens] = [(v,) for v in range(h.n)]
    else:
        tokens = [(h.label(v),) for v in range(h.n)]
    g, _ = straight_convert_tokens(h, tokens)
    return g


def augment_entrance_exit(
    h: Digraph,
    entrance: bool = True,
    exit: bool = True,
    tag: int | None = None,
    tokens: Sequence[Tokens] | None = None,
) -> tuple[Digraph, tuple[Tokens, ...]]:
    """Add an entrance vertex before the unique source and/or an exit after the unique sink.

    New vertexes get ids ``n`` (entrance) and ``n+1`` (exit) and the symbols
    ``ω<tag>`` / ``φ<tag>``; ``tag`` defaults to one more than the number of
    entrance symbols already present.  Returns the graph and its tokens.
    """
    if tokens is None:
        tokens = tuple((v,) if h.labels is None else (h.label(v),) for v in range(h.n))
    src, snk = sources(h), sinks(h)
    if not src and not snk:
        raise AugmentError("graph has neither a source nor a sink (contour-only graph)")
    if entrance and len(src) != 1:
        raise AugmentError(f"entrance needs exactly one source, found {src}")
    if exit and len(snk) != 1:
        raise AugmentError(f"exit needs exactly one sink, found {snk}")
    if tag is None:
        tag = 1 + sum(1 for t in tokens for x in t if isinstance(x, str) and x.startswith("ω"))
    arcs = list(h.arcs)
    new_tokens = list(tokens)
    n = h.n
    if entrance:
        arcs.append((n, src[0]))
        new_tokens.append((f"ω{tag}",))
        n += 1
    if exit:
        arcs.append((snk[0], n))
        new_tokens.append((f"φ{tag}",))
        n += 1
    labels = [tokens_text(t) for t in new_tokens]
    return _trusted(n, arcs, labels), tuple(new_tokens)


def reverse_convert_with_map(R: RoleMatrix) -> tuple[Digraph, tuple[Arc, ...]]:
    """Root graph of ``R`` and, per vertex ``r`` of ``R``, the root arc it stands for.

    Tail and head endpoints are merged along every adjacency ``a -> b``
    (head of a = tail of b); the classes become root vertexes, numbered in
    order of first appearance.  Raises :class:`ReverseConvertError` when
    ``R`` is not quasi-canonical or the classes do not reproduce ``R``.
    """
    if R.role not in (Role.R, Role.L):
        raise ReverseConvertError(f"cannot reverse-convert a matrix with role {R.role.value}")
    g = R.graph
    verdict = is_quasi_canonical(R.as_role(Role.L))
    if not verdict.quasi_canonical:
        raise ReverseConvertError(
            "matrix is not quasi-canonical; reverse converting is undefined "
            f"(violating arcs {list(verdict.violating_arcs)}, minor failures {list(verdict.minor_failures)})"
        )
    parent = list(range(2 * g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.arcs:
        ra, rb = find(2 * a + 1), find(2 * b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    ids: dict[int, int] = {}
    for x in range(2 * g.n):
        ids.setdefault(find(x), len(ids))
    arc_of = tuple((ids[find(2 * r)], ids[find(2 * r + 1)]) for r in range(g.n))
    if any(u == v for u, v in arc_of):
        raise ReverseConvertError("reconstruction produces a loop")
    if len(set(arc_of)) != len(arc_of):
        raise ReverseConvertError("reconstruction produces parallel arcs")
    h = _trusted(len(ids), arc_of)
    # the merged classes already realise every arc of R; any surplus
    # adjacency means R is not a line digraph after all
    if sum(h.indeg(v) * h.outdeg(v) for v in range(h.n)) != g.m:
        raise ReverseConvertError("root graph has adjacencies absent from the matrix")
    return h, arc_of


def reverse_convert(R: RoleMatrix) -> Digraph:
    return reverse_convert_with_map(R)[0]


@dataclass(frozen=True)
class ConvertStep:
    index: int
    graph: Digraph
    tokens: tuple[Tokens, ...]
    nu: int
    added: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def labels(self) -> tuple[Tokens, ...]:
        return self.tokens


@dataclass(frozen=True)
class CapEvent:
    step: int
    predicted_size: int
    cap: int


@dataclass(frozen=True)
class ConvertTrace:
    steps: tuple[ConvertStep, ...]
    augment: str
    cap_event: CapEvent | None = None

    @property
    def nus(self) -> list[int]:
        return [s.nu for s in self.steps]

    @property
    def sizes(self) -> list[int]:
        return [s.n for s in self.steps]


def _auto_flags(g: Digraph) -> tuple[bool, bool]:
    src, snk = sources(g), sinks(g)
    entrance = len(src) == 1 and g.outdeg(src[0]) >= 2
    exit = len(snk) == 1 and g.indeg(snk[0]) >= 2
    return entrance, exit


def convert_step(
    g: Digraph, tokens: Sequence[Tokens], index: int, augment: str = "none"
) -> ConvertStep:
    """One straight converting of ``g`` followed by the requested augmentation."""
    if augment not in AUGMENT_MODES:
        raise ValueError(f"augment must be one of {AUGMENT_MODES}, got {augment!r}")
    nxt, toks = straight_convert_tokens(g, tokens)
    added: tuple[int, ...] = ()
    if augment != "none":
        entrance, exit = (True, True) if augment == "faithful" else _auto_flags(nxt)
        if entrance or exit:
            base = nxt.n
            nxt, toks = augment_entrance_exit(nxt, entrance, exit, tag=index, tokens=toks)
            added = tuple(range(base, nxt.n))
    return ConvertStep(index, nxt, toks, cyclomatic_number(nxt), added)


def iterate_convert(
    h: Digraph,
    steps: int,
    augment: str = "none",
    cap: int = DEFAULT_SIZE_CAP,
) -> ConvertTrace:
    """Apply ``steps`` straight convertings, recording every intermediate graph.

    ``augment`` is ``"none"``, ``"auto"`` (add an entrance/exit only where the
    new source branches or the new sink merges) or ``"faithful"`` (always add
    both).  When the next graph would exceed ``cap`` vertexes the trace stops
    and carries a :class:`CapEvent`.
    """
    if augment not in AUGMENT_MODES:
        raise ValueError(f"augment must be one of {AUGMENT_MODES}, got {augment!r}")
    cur = ConvertStep(0, h, initial_tokens(h), cyclomatic_number(h))
    out = [cur]
    for j in range(1, steps + 1):
        predicted = cur.graph.m + (2 if augment == "faithful" else 0)
        if predicted > cap:
            return ConvertTrace(tuple(out), augment, CapEvent(j, predicted, cap))
        cur = convert_step(cur.graph, cur.tokens, j, augment)
        out.append(cur)
    return ConvertTrace(tuple(out), augment)


def paths_of_length(h: Digraph, m: int) -> list[tuple[int, ...]]:
    """All directed walks with exactly ``m`` arcs, sorted lexicographically.

    Vertexes may repeat, so contours appear among the walks.
    """
    if m < 0:
        raise ValueError("length must be non-negative")
    walks: list[tuple[int, ...]] = [(v,) for v in range(h.n)]
    for _ in range(m):
        walks = [w + (x,) for w in walks for x in h.succ(w[-1])]
    return sorted(walks)


def label_table(step: ConvertStep) -> list[tuple[int, str, str, str]]:
    """Rows ``(arc id, begin, end, tuple)`` for the arcs of a trace step."""
    g, toks = step.graph, step.tokens
    rows = []
    for i, (u, v) in enumerate(g.arcs):
        rows.append((i, tokens_text(toks[u]), tokens_text(toks[v]), tokens_text(toks[u] + toks[v][-1:])))
    return rows


def roundtrip_isomorphism(g: Digraph) -> tuple[bool, str]:
    """Straight-convert ``g``, reverse-convert the result and compare with ``g``.

    The comparison replays labels: line-graph vertex ``r`` is arc
    ``g.arcs[r]`` and the root arc rebuilt for ``r`` must map onto it under
    one consistent vertex bijection.  Isolated vertexes of ``g`` leave no arc
    behind and are reported as unrecoverable.
    """
    line = straight_convert(g)
    try:
        h, arc_of = reverse_convert_with_map(RoleMatrix(line, Role.R))
    except ReverseConvertError as exc:
        return False, f"reverse converting failed: {exc}"
    isolated = [v for v in range(g.n) if g.indeg(v) == 0 and g.outdeg(v) == 0]
    if isolated:
        return False, f"isolated vertexes {isolated} cannot be recovered"
    phi: dict[int, int] = {}
    for (x, y), (u, v) in zip(arc_of, g.arcs):
        for a, b in ((x, u), (y, v)):
            if phi.setdefault(a, b) != b:
                return False, f"root vertex {a} maps to both {phi[a]} and {b}"
    if len(phi) != h.n or len(set(phi.values())) != g.n or h.n != g.n:
        return False, "vertex correspondence is not a bijection"
    return True, "isomorphic"
