"""Arc subdivision (Δn) to reach quasi-canonical or canonical form, and its inverse.

Subdividing ``x -> y`` into ``x -> z -> y`` keeps every reachability relation
between the old vertexes, so a matrix can be pushed into a recognisable form
without changing the relation it encodes.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Any

from .core import Arc, Digraph, _trusted
from .duality import (
    DualityVerdict,
    Role,
    RoleMatrix,
    degree_violations,
    is_canonical,
    is_quasi_canonical,
)

log = logging.getLogger(__name__)

_INSERTED = re.compile(r"x\+(\d+)$")


class NormalizationError(RuntimeError):
    """Insertion cap exceeded; ``report`` holds the partial run."""

    def __init__(self, message: str, report: "NormalizationReport"):
        super().__init__(message)
        self.report = report


def is_inserted_label(label: str | None) -> bool:
    return label is not None and _INSERTED.match(label) is not None


def delta_n_insert(L: RoleMatrix, arc: Arc) -> RoleMatrix:
    """Replace ``x -> y`` by ``x -> n -> y`` with a new vertex ``n`` labelled ``x+<k>``."""
    g = L.graph
    x, y = arc
    if not g.has_arc(x, y):
        raise ValueError(f"arc {arc} is not present")
    labels = list(g.labels) if g.labels is not None else [None] * g.n
    k = 1 + sum(1 for lab in labels if is_inserted_label(lab))
    labels.append(f"x+{k}")
    arcs = [a for a in g.arcs if a != (x, y)] + [(x, g.n), (g.n, y)]
    return RoleMatrix(_trusted(g.n + 1, arcs, labels), L.role)


@dataclass(frozen=True)
class NormalizationReport:
    target: str  # "quasi" | "canonical"
    input_order: int
    steps: tuple[tuple[Arc, int], ...]
    rounds: int
    converged: bool
    result: RoleMatrix
    cap: int

    @property
    def s_q(self) -> int:
        return len(self.steps)

    @property
    def s_q_is_n2_minus_1(self) -> bool:
        # recorded, not enforced: the excluded count n^2 - 1 is unexplained
        return self.s_q == self.input_order**2 - 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": self.target,
            "input_order": self.input_order,
            "result_order": self.result.order,
            "s_q": self.s_q,
            "s_q_is_n2_minus_1": self.s_q_is_n2_minus_1,
            "rounds": self.rounds,
            "converged": self.converged,
            "cap": self.cap,
            "insertions": [
                {"arc": list(arc), "vertex": v} for arc, v in self.steps
            ],
        }


def _targets(L: RoleMatrix, target: str) -> tuple[bool, list[Arc]]:
    verdict: DualityVerdict
    if target == "quasi":
        verdict = is_quasi_canonical(L)
        done = verdict.quasi_canonical
        primary = {(t, h) for t, h, _ in verdict.violating_arcs}
    else:
        verdict = is_canonical(L)
        done = bool(verdict.canonical)
        primary = {(t, h) for t, h, _ in verdict.violating_arcs}
    if done:
        return True, []
    # minor failures only matter once the full matrix is clean
    arcs = primary or set(verdict.minor_failures)
    return False, sorted(arcs)


def _normalize(L: RoleMatrix, target: str, strategy: str, cap: int | None) -> NormalizationReport:
    if strategy not in ("sweep", "immediate"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if L.role is not Role.L:
        L = L.as_role(Role.L)
    n0 = L.order
    limit = 10 * n0 * n0 if cap is None else cap
    steps: list[tuple[Arc, int]] = []
    rounds = 0
    cur = L
    while True:
        done, arcs = _targets(cur, target)
        if done:
            return NormalizationReport(target, n0, tuple(steps), rounds, True, cur, limit)
        rounds += 1
        if strategy == "immediate":
            arcs = arcs[:1]
        for arc in arcs:
            if len(steps) >= limit:
                report = NormalizationReport(target, n0, tuple(steps), rounds, False, cur, limit)
                log.warning("normalization hit the cap of %d insertions (order %d)", limit, n0)
                raise NormalizationError(
                    f"no {target} form within {limit} insertions", report
                )
            steps.append((arc, cur.order))
            cur = delta_n_insert(cur, arc)


def quasi_normalize(L: RoleMatrix, strategy: str = "sweep", cap: int | None = None) -> NormalizationReport:
    """Subdivide arcs until the matrix is quasi-canonical.

    Each round subdivides, in lexicographic order, every arc with non-zero
    ``c``; only when ``c`` vanishes everywhere are arcs with a failing minor
    subdivided.  ``strategy="immediate"`` re-evaluates after every single
    insertion instead.  The default cap is ``10 n^2`` insertions.
    """
    return _normalize(L, "quasi", strategy, cap)


def normalize_canonical(L: RoleMatrix, strategy: str = "sweep", cap: int | None = None) -> NormalizationReport:
    """Like :func:`quasi_normalize`, also splitting every branch-to-merge arc."""
    return _normalize(L, "canonical", strategy, cap)


@dataclass(frozen=True)
class Contraction:
    """One ``x -> v -> y`` to ``x -> y`` step, ids as they were before it."""

    vertex: int
    tail: int
    head: int
    label: str | None


@dataclass(frozen=True)
class Reduction:
    result: RoleMatrix
    log: tuple[Contraction, ...] = field(default=())


def _contract(g: Digraph, v: int) -> tuple[Digraph, Contraction]:
    (x,), (y,) = g.pred(v), g.succ(v)

    def shift(a: int) -> int:
        return a - (a > v)

    arcs = [(shift(a), shift(b)) for a, b in g.arcs if v not in (a, b)]
    arcs.append((shift(x), shift(y)))
    labels = None
    if g.labels is not None:
        labels = [lab for i, lab in enumerate(g.labels) if i != v]
    lab = g.labels[v] if g.labels is not None else None
    return _trusted(g.n - 1, arcs, labels), Contraction(v, x, y, lab)


def _status(L: RoleMatrix, keep: str | None) -> bool:
    if keep is None:
        return True
    if keep == "quasi":
        return is_quasi_canonical(L).quasi_canonical
    if keep == "canonical":
        return bool(is_canonical(L).canonical)
    raise ValueError(f"unknown status {keep!r}")


def reduce(L: RoleMatrix, full: bool = False, keep: str | None = None) -> Reduction:
    """Contract degree-(1, 1) vertexes (the inverse of Δn).

    By default only vertexes carrying an inserted ``x+<k>`` label are
    candidates; ``full=True`` admits every vertex.  A contraction is skipped
    if it would create a loop or a parallel arc, or if ``keep`` names a
    status (``"quasi"`` / ``"canonical"``) the matrix has and would lose.
    Candidates are tried in ascending id order until none applies.
    """
    cur = L
    steps: list[Contraction] = []
    keep_status = keep if keep is not None and _status(L, keep) else None
    changed = True
    while changed:
        changed = False
        g = cur.graph
        for v in range(g.n):
            if g.indeg(v) != 1 or g.outdeg(v) != 1:
                continue
            if not full and not (g.labels is not None and is_inserted_label(g.labels[v])):
                continue
            x, y = g.pred(v)[0], g.succ(v)[0]
            if x == y or g.has_arc(x, y):
                continue
            nxt, step = _contract(g, v)
            cand = RoleMatrix(nxt, cur.role)
            if not _status(cand, keep_status):
                continue
            cur = cand
            steps.append(step)
            changed = True
            break
    return Reduction(cur, tuple(steps))


def expand(L: RoleMatrix, log: tuple[Contraction, ...]) -> RoleMatrix:
    """Undo a reduction log, re-inserting each contracted vertex at its old id."""
    g = L.graph
    for c in reversed(log):
        v = c.vertex

        def shift(a: int) -> int:
            return a + (a >= v)

        x, y = c.tail, c.head
        arcs = [(shift(a), shift(b)) for a, b in g.arcs]
        arcs.remove((x, y))
        arcs += [(x, v), (v, y)]
        labels = None
        if g.labels is not None or c.label is not None:
            old = list(g.labels) if g.labels is not None else [None] * g.n
            labels = old[:v] + [c.label] + old[v:]
        g = _trusted(g.n + 1, arcs, labels)
    return RoleMatrix(g, L.role)


def replay_reduce(report: NormalizationReport) -> RoleMatrix:
    """Contract the inserted vertexes newest first, recovering the input exactly."""
    g = report.result.graph
    for arc, z in reversed(report.steps):
        if g.pred(z) != (arc[0],) or g.succ(z) != (arc[1],) or z != g.n - 1:
            raise ValueError(f"vertex {z} does not match its insertion record {arc}")
        g, _ = _contract(g, z)
    return RoleMatrix(g, report.result.role)
