"""Converting classes and vertex-count growth.

Under repeated straight converting a vertex of the step-``k`` graph is a walk
of ``k`` arcs; its in-degree is that of the walk's first vertex and its
out-degree that of its last.  A walk from a merge vertex (in-degree >= 2) to
a branch vertex (out-degree >= 2) therefore becomes a complicated vertex and
raises the cyclomatic number at the next step.  Such shortest walks are the
``l31`` intervals.

* H1, homonomic: no contour, no interval; the cyclomatic number never moves.
* H2, bounded-heteronomous: intervals but no contour; it moves finitely often.
* H3, progressive-heteronomous: a contour; it keeps moving.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import (
    Digraph,
    cyclomatic_number,
    has_contour,
    is_single_entrance_exit,
    topological_order,
)
from .duality import RoleMatrix, is_canonical

CLASS_NAMES = {
    "H1": "homonomic",
    "H2": "bounded-heteronomous",
    "H3": "progressive-heteronomous",
}


@dataclass(frozen=True)
class L31Interval:
    start: int
    end: int
    path: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.path) - 1


def _is_merge(g: Digraph, v: int) -> bool:
    return g.indeg(v) >= 2


def _is_branch(g: Digraph, v: int) -> bool:
    return g.outdeg(v) >= 2


def find_l31_intervals(g: Digraph) -> list[L31Interval]:
    """One shortest merge-to-branch path per reachable (merge, branch) pair.

    BFS visits successors in ascending order, so ties resolve towards smaller
    ids.  A complicated vertex yields an interval of length 0.
    """
    found = []
    for u in range(g.n):
        if not _is_merge(g, u):
            continue
        parent = {u: -1}
        queue = deque([u])
        while queue:
            v = queue.popleft()
            if _is_branch(g, v):
                path = []
                w = v
                while w != -1:
                    path.append(w)
                    w = parent[w]
                found.append(L31Interval(u, v, tuple(reversed(path))))
            for w in g.succ(v):
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
    found.sort(key=lambda iv: (iv.length, iv.start, iv.end))
    return found


def _has_interval(g: Digraph) -> bool:
    seen = [False] * g.n
    queue = deque(v for v in range(g.n) if _is_merge(g, v))
    for v in queue:
        seen[v] = True
    while queue:
        v = queue.popleft()
        if _is_branch(g, v):
            return True
        for w in g.succ(v):
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return False


def _is_pure_contour(g: Digraph) -> bool:
    return g.n > 0 and all(g.indeg(v) == 1 and g.outdeg(v) == 1 for v in range(g.n))


def quick_class(g: Digraph) -> str:
    """Class label without collecting witnesses; linear time."""
    if topological_order(g) is not None or _is_pure_contour(g):
        return "H2" if _has_interval(g) else "H1"
    return "H3"


def _extend(g: Digraph, path: tuple[int, ...]) -> tuple[int, ...]:
    # grow a path backwards and forwards along smallest-id neighbours
    out = list(path)
    used = set(out)
    while True:
        nxt = [p for p in g.pred(out[0]) if p not in used]
        if not nxt:
            break
        out.insert(0, nxt[0])
        used.add(nxt[0])
    while True:
        nxt = [s for s in g.succ(out[-1]) if s not in used]
        if not nxt:
            break
        out.append(nxt[0])
        used.add(nxt[0])
    return tuple(out)


def _maximal_paths(g: Digraph, limit: int):
    """Simple paths that cannot be extended at either end; ``None`` past ``limit``."""
    paths = []
    for s in range(g.n):
        stack = [(s, (s,))]
        while stack:
            v, path = stack.pop()
            ext = [w for w in g.succ(v) if w not in path]
            if not ext:
                if any(p not in path for p in g.pred(path[0])):
                    continue  # extensible at the front, a longer path covers it
                paths.append(path)
                if len(paths) > limit:
                    return None
                continue
            for w in reversed(ext):
                stack.append((w, path + (w,)))
    return sorted(paths)


def _monotone(seq: list[int]) -> bool:
    inc = all(a <= b for a, b in zip(seq, seq[1:]))
    dec = all(a >= b for a, b in zip(seq, seq[1:]))
    return inc or dec


@dataclass(frozen=True)
class HolonomicReport:
    holonomic: bool
    offending_path: tuple[int, ...] | None
    literal_holonomic: bool | None
    literal_offending_path: tuple[int, ...] | None

    @property
    def agree(self) -> bool | None:
        if self.literal_holonomic is None:
            return None
        return self.literal_holonomic == self.holonomic


def holonomic_check(g: Digraph, path_limit: int = 100_000) -> HolonomicReport:
    """Holonomy by the interval criterion, with the literal degree-sum test alongside.

    The operative answer is "no l31 interval".  The literal reading, every
    maximal path having monotone ``indeg + outdeg`` sums, is reported in the
    ``literal_*`` fields (``None`` when more than ``path_limit`` maximal
    paths exist); it rejects plain chains because of their endpoints.
    """
    intervals = find_l31_intervals(g)
    offending = _extend(g, intervals[0].path) if intervals else None
    literal = None
    literal_path = None
    paths = _maximal_paths(g, path_limit)
    if paths is not None:
        literal = True
        for p in paths:
            if len(p) > 1 and not _monotone([g.indeg(v) + g.outdeg(v) for v in p]):
                literal, literal_path = False, p
                break
    return HolonomicReport(not intervals, offending, literal, literal_path)


def delta_nu(g: Digraph) -> int:
    """Sum of ``(indeg - 1)(outdeg - 1)`` over vertexes with both arc kinds.

    Equals the rise of the cyclomatic number under one straight converting
    for connected graphs whose source sends one arc and whose sink receives
    one (pure sources and sinks would otherwise contribute).
    """
    return sum(
        (g.indeg(v) - 1) * (g.outdeg(v) - 1)
        for v in range(g.n)
        if g.indeg(v) >= 1 and g.outdeg(v) >= 1
    )


def predicted_delta_nus(g: Digraph, steps: int) -> list[int]:
    """Cyclomatic rise at each of ``steps`` convertings, without converting.

    The step-``k`` graph's contribution is a sum over walks of ``k`` arcs,
    weighted by ``(indeg(first) - 1)(outdeg(last) - 1)``; walk counts come
    from powers of the adjacency matrix.  Exact under faithful augmentation.
    """
    a = np.zeros((g.n, g.n), dtype=object)
    for u, v in g.arcs:
        a[u, v] = 1
    head = np.array([max(g.indeg(v) - 1, 0) for v in range(g.n)], dtype=object)
    tail = np.array([max(g.outdeg(v) - 1, 0) for v in range(g.n)], dtype=object)
    out = []
    walks = np.identity(g.n, dtype=object) if g.n else np.zeros((0, 0), dtype=object)
    for _ in range(steps):
        out.append(int(head.dot(walks).dot(tail)) if g.n else 0)
        walks = walks.dot(a)
    return out


def predict_growth(g: Digraph, steps: int, augment: str = "faithful") -> list[int]:
    """Predicted vertex counts ``n_1 .. n_{steps+1}``.

    ``Δn_1 = m_1 - n_1`` (+2 for the entrance and exit added under faithful
    augmentation) and ``Δn_j = Δn_{j-1} + Δν(H_{j-1})``.  With no interval
    every ``Δν`` is zero and the counts grow linearly.
    """
    if augment not in ("faithful", "none"):
        raise ValueError("prediction supports augment='faithful' or 'none'")
    dnus = predicted_delta_nus(g, steps)
    dn = g.m - g.n + (2 if augment == "faithful" else 0)
    sizes = [g.n]
    for j in range(steps):
        if j > 0:
            dn += dnus[j - 1]
        sizes.append(sizes[-1] + dn)
    return sizes


def predict_nus(g: Digraph, steps: int) -> list[int]:
    """Predicted cyclomatic numbers ``ν_1 .. ν_{steps+1}`` (faithful augmentation)."""
    nus = [cyclomatic_number(g)]
    for d in predicted_delta_nus(g, steps):
        nus.append(nus[-1] + d)
    return nus


@dataclass(frozen=True)
class ClassReport:
    cls: str
    contours: tuple[tuple[int, ...], ...]
    intervals: tuple[L31Interval, ...]
    j_max: int | None
    predicted_growth: tuple[int, ...]
    canonical: bool
    standing_assumptions: bool
    warnings: tuple[str, ...] = field(default=())

    @property
    def name(self) -> str:
        return CLASS_NAMES[self.cls]

    @property
    def h1_with_canonicity(self) -> bool:
        # the stricter reading: homonomic and canonical as an L matrix
        return self.cls == "H1" and self.canonical

    def to_dict(self) -> dict[str, Any]:
        return {
            "class": self.cls,
            "name": self.name,
            "contours": [list(c) for c in self.contours],
            "intervals": [
                {"start": iv.start, "end": iv.end, "path": list(iv.path), "length": iv.length}
                for iv in self.intervals
            ],
            "j_max": self.j_max,
            "predicted_growth": list(self.predicted_growth),
            "canonical": self.canonical,
            "h1_with_canonicity": self.h1_with_canonicity,
            "standing_assumptions": self.standing_assumptions,
            "warnings": list(self.warnings),
        }


def classify_graph(g: Digraph, predict_steps: int = 6) -> ClassReport:
    """Class, witnesses, interval bound and predicted growth of ``g``.

    ``j_max`` is the length of the shortest interval: the number of
    convertings the cyclomatic number survives unchanged.
    """
    warnings = []
    standing = is_single_entrance_exit(g)
    if not standing:
        warnings.append("graph is not single-entrance/exit; classified on structure alone")
    cyclic, witness = has_contour(g)
    intervals = find_l31_intervals(g)
    if cyclic and _is_pure_contour(g):
        warnings.append("pure contour: converting maps it to itself, treated as H1")
        cls = "H1"
    elif cyclic:
        cls = "H3"
    elif intervals:
        cls = "H2"
    else:
        cls = "H1"
    j_max = intervals[0].length if intervals else None
    growth = predict_growth(g, predict_steps) if standing else predict_growth(g, predict_steps, "none")
    return ClassReport(
        cls=cls,
        contours=(witness,) if witness else (),
        intervals=tuple(intervals),
        j_max=j_max,
        predicted_growth=tuple(growth),
        canonical=bool(is_canonical(RoleMatrix(g)).canonical),
        standing_assumptions=standing,
        warnings=tuple(warnings),
    )
