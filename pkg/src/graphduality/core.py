"""Directed graph model and the structural checks the other modules build on.

A :class:`Digraph` is an immutable value: ``n`` vertexes numbered ``0..n-1``,
a lexicographically sorted tuple of ``(tail, head)`` arcs and optional
per-vertex text labels.  Loops and parallel arcs are rejected.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Arc = tuple[int, int]


class GraphError(ValueError):
    """Raised for structurally invalid graph input."""


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[Arc, ...]
    labels: tuple[str | None, ...] | None = None
    _succ: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _pred: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        succ: list[list[int]] = [[] for _ in range(self.n)]
        pred: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            succ[u].append(v)
            pred[v].append(u)
        # arcs are sorted, so succ lists are sorted; pred lists need sorting
        object.__setattr__(self, "_succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "_pred", tuple(tuple(sorted(p)) for p in pred))

    @property
    def m(self) -> int:
        return len(self.arcs)

    def succ(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def pred(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def outdeg(self, v: int) -> int:
        return len(self._succ[v])

    def indeg(self, v: int) -> int:
        return len(self._pred[v])

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._succ[u]

    def label(self, v: int) -> str:
        """Display label of ``v``; falls back to the vertex id."""
        if self.labels is not None and self.labels[v] is not None:
            return self.labels[v]
        return str(v)

    def arc_index(self) -> dict[Arc, int]:
        return {a: i for i, a in enumerate(self.arcs)}


def build_digraph(
    n: int,
    arcs: Iterable[Sequence[int]],
    labels: Sequence[str | None] | None = None,
) -> Digraph:
    """Validate and build a :class:`Digraph`.

    Raises :class:`GraphError` on a negative count, an out-of-range endpoint,
    a self-loop, a duplicate arc, or a malformed label list.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: set[Arc] = set()
    for arc in arcs:
        u, v = int(arc[0]), int(arc[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if (u, v) in seen:
            raise GraphError(f"duplicate arc ({u}, {v})")
        seen.add((u, v))
    lab: tuple[str | None, ...] | None = None
    if labels is not None:
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")
        present = [x for x in labels if x is not None]
        if len(set(present)) != len(present):
            raise GraphError("vertex labels must be unique")
        lab = tuple(labels) if present else None
    return Digraph(n, tuple(sorted(seen)), lab)


def _trusted(n: int, arcs: Iterable[Arc], labels: Sequence[str | None] | None = None) -> Digraph:
    # internal fast path: caller guarantees validity
    lab = tuple(labels) if labels is not None and any(x is not None for x in labels) else None
    return Digraph(n, tuple(sorted(arcs)), lab)


@dataclass(frozen=True)
class DegreeProfile:
    indeg: tuple[int, ...]
    outdeg: tuple[int, ...]


def degrees(g: Digraph) -> DegreeProfile:
    return DegreeProfile(
        tuple(g.indeg(v) for v in range(g.n)),
        tuple(g.outdeg(v) for v in range(g.n)),
    )


def weak_component_labels(g: Digraph) -> list[int]:
    """Component index per vertex, numbered in order of smallest member."""
    comp = [-1] * g.n
    count = 0
    for start in range(g.n):
        if comp[start] != -1:
            continue
        comp[start] = count
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.succ(v) + g.pred(v):
                if comp[w] == -1:
                    comp[w] = count
                    queue.append(w)
        count += 1
    return comp


def weak_components(g: Digraph) -> int:
    return max(weak_component_labels(g), default=-1) + 1


def cyclomatic_number(g: Digraph) -> int:
    """Circuit rank ``m - n + p`` with ``p`` counted on weak components."""
    return g.m - g.n + weak_components(g)


def is_weakly_connected(g: Digraph) -> bool:
    return g.n > 0 and weak_components(g) == 1


def topological_order(g: Digraph) -> list[int] | None:
    """Kahn's algorithm, smallest ready vertex first; ``None`` if cyclic."""
    import heapq

    indeg = [g.indeg(v) for v in range(g.n)]
    ready = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in g.succ(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order if len(order) == g.n else None


def has_contour(g: Digraph) -> tuple[bool, tuple[int, ...] | None]:
    """Detect a directed cycle.

    The witness is a shortest cycle, written as a closed vertex sequence that
    starts and ends at its smallest vertex, e.g. ``(0, 1, 2, 0)``.  Among
    shortest cycles the one found from the smallest start vertex wins.
    """
    if topological_order(g) is not None:
        return False, None
    best: tuple[int, ...] | None = None
    for s in range(g.n):
        # BFS from s over vertexes > s; a shortest cycle through s as its minimum
        parent = {s: -1}
        queue = deque([s])
        found = None
        while queue and found is None:
            v = queue.popleft()
            for w in g.succ(v):
                if w == s:
                    found = v
                    break
                if w > s and w not in parent:
                    parent[w] = v
                    queue.append(w)
        if found is None:
            continue
        path = []
        v = found
        while v != -1:
            path.append(v)
            v = parent[v]
        cycle = tuple(reversed(path)) + (s,)
        if best is None or len(cycle) < len(best):
            best = cycle
    return True, best


def reachable_from(g: Digraph, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.succ(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def transitive_closure(g: Digraph) -> set[Arc]:
    """All pairs ``(u, v)``, ``u != v``, with a directed path from u to v."""
    out = set()
    for u in range(g.n):
        for v in reachable_from(g, u):
            if v != u:
                out.add((u, v))
    return out


def sources(g: Digraph) -> list[int]:
    return [v for v in range(g.n) if g.indeg(v) == 0]


def sinks(g: Digraph) -> list[int]:
    return [v for v in range(g.n) if g.outdeg(v) == 0]


@dataclass(frozen=True)
class Violation:
    rule: str
    description: str
    witness: tuple[int, ...]


@dataclass(frozen=True)
class FValidityReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_f_requirements(g: Digraph, mode: str = "quasicanonical") -> FValidityReport:
    """Check the row/column rules an operational vertex matrix must obey.

    ``mode`` is ``"quasicanonical"`` or ``"canonical"``; the canonical list
    adds the branch/merge rules on top of the quasi-canonical one.  An empty
    column is a source, an empty row a sink.
    """
    if mode not in ("quasicanonical", "canonical"):
        raise ValueError(f"unknown mode {mode!r}")
    found: list[Violation] = []
    # the Digraph type already forbids loops; kept so the report is complete
    loops = tuple(u for u, v in g.arcs if u == v)
    if loops:
        found.append(Violation("zero-diagonal", "non-zero diagonal element", loops))
    src = sources(g)
    if len(src) > 1:
        found.append(Violation("single-source", "more than one empty column", tuple(src)))
    for v in src:
        if g.outdeg(v) != 1:
            found.append(Violation(
                "source-row",
                f"empty column {v} but its row has {g.outdeg(v)} non-zero elements",
                (v,),
            ))
    snk = sinks(g)
    if len(snk) > 1:
        found.append(Violation("single-sink", "more than one empty row", tuple(snk)))
    for v in snk:
        if g.indeg(v) != 1:
            found.append(Violation(
                "sink-column",
                f"empty row {v} but its column has {g.indeg(v)} non-zero elements",
                (v,),
            ))
    if mode == "canonical":
        for h in range(g.n):
            if g.outdeg(h) > 1 and g.indeg(h) != 1:
                found.append(Violation(
                    "branch-row",
                    f"row {h} has {g.outdeg(h)} non-zeros but column {h} has {g.indeg(h)}",
                    (h,),
                ))
            if g.indeg(h) > 1 and g.outdeg(h) != 1:
                found.append(Violation(
                    "merge-column",
                    f"column {h} has {g.indeg(h)} non-zeros but row {h} has {g.outdeg(h)}",
                    (h,),
                ))
    return FValidityReport(tuple(found))


def is_single_entrance_exit(g: Digraph) -> bool:
    """Exactly one entrance and one exit, and every vertex lies between them.

    This is the "restricted" graph the converting machinery assumes: the
    quasi-canonical row/column rules hold, there is exactly one source and one
    sink, every vertex is reachable from the source and reaches the sink.
    """
    if g.n < 2 or not validate_f_requirements(g).ok:
        return False
    src, snk = sources(g), sinks(g)
    if len(src) != 1 or len(snk) != 1:
        return False
    if len(reachable_from(g, src[0])) != g.n:
        return False
    return len(reachable_from(reverse(g), snk[0])) == g.n


def reverse(g: Digraph) -> Digraph:
    return _trusted(g.n, ((v, u) for u, v in g.arcs), g.labels)


def relabel(g: Digraph, perm: Sequence[int]) -> Digraph:
    """Image of ``g`` under the vertex bijection ``v -> perm[v]``."""
    labels = None
    if g.labels is not None:
        out: list[str | None] = [None] * g.n
        for v, lab in enumerate(g.labels):
            out[perm[v]] = lab
        labels = out
    return _trusted(g.n, ((perm[u], perm[v]) for u, v in g.arcs), labels)
