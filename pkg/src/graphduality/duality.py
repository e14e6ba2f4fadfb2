"""Recognition of matrices that are both vertex- and edge-adjacency matrices.

A 0/1 matrix ``L`` read as a direct-path relation is *quasi-canonical* when
it is also the arc-adjacency matrix of some edge graph ``H``; it is
*canonical* when, in addition, the vertex graph and ``H`` share their
cyclomatic number.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Any

import numpy as np

from .core import Arc, Digraph, build_digraph


class Role(enum.Enum):
    L = "L"  # direct-path / binary-relation matrix
    R = "R"  # arc adjacency of an edge graph
    F = "F"  # vertex adjacency of an edge graph


class RoleError(ValueError):
    pass


@dataclass(frozen=True)
class RoleMatrix:
    """A 0/1 square matrix paired with the reading it is meant under."""

    graph: Digraph
    role: Role = Role.L

    @property
    def order(self) -> int:
        return self.graph.n

    @property
    def entries(self) -> np.ndarray:
        a = np.zeros((self.graph.n, self.graph.n), dtype=np.int64)
        for u, v in self.graph.arcs:
            a[u, v] = 1
        return a

    @classmethod
    def from_entries(cls, entries: Any, role: Role = Role.L) -> "RoleMatrix":
        a = np.asarray(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("entries must be 0/1")
        arcs = [(int(i), int(j)) for i, j in zip(*np.nonzero(a))]
        return cls(build_digraph(a.shape[0], arcs), role)

    def as_role(self, role: Role) -> "RoleMatrix":
        return RoleMatrix(self.graph, role)


def _require(mat: RoleMatrix, *roles: Role) -> None:
    if mat.role not in roles:
        wanted = "/".join(r.value for r in roles)
        raise RoleError(f"expected a matrix with role {wanted}, got {mat.role.value}")


def s_matrix(L: RoleMatrix) -> np.ndarray:
    """``s_ij = outdeg(i) + indeg(j)`` on every arc, zero elsewhere."""
    _require(L, Role.L)
    g = L.graph
    s = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j in g.arcs:
        s[i, j] = g.outdeg(i) + g.indeg(j)
    return s


@dataclass(frozen=True)
class CQuantities:
    s: np.ndarray
    c: np.ndarray
    row_min: np.ndarray
    col_min: np.ndarray


def _c_from_s(s: np.ndarray, mask: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # minima over the non-zero positions; an arc-free row/column gets 0 and
    # contributes nothing because c is masked by the arc pattern
    big = np.iinfo(np.int64).max
    masked = np.where(mask, s, big)
    row_min = masked.min(axis=1, initial=big)
    col_min = masked.min(axis=0, initial=big)
    row_min = np.where(row_min == big, 0, row_min)
    col_min = np.where(col_min == big, 0, col_min)
    c = mask * ((s - row_min[:, None]) + (s - col_min[None, :]))
    return c, row_min, col_min


def c_matrix(L: RoleMatrix) -> CQuantities:
    """Row and column deviations of ``s`` from their minima, summed per arc."""
    s = s_matrix(L)
    c, row_min, col_min = _c_from_s(s, L.entries.astype(bool))
    return CQuantities(s, c, row_min, col_min)


def minor_c_matrix(L: RoleMatrix, arc: Arc) -> np.ndarray:
    """``c`` of the order ``n-1`` minor left after deleting row i, column j.

    Row and column sums are recomputed inside the minor.  Literal evaluation;
    :func:`is_quasi_canonical` uses an equivalent grouped evaluator.
    """
    _require(L, Role.L)
    i, j = arc
    if not L.graph.has_arc(i, j):
        raise ValueError(f"{arc} is not an arc of the matrix")
    a = L.entries
    minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
    rows = minor.sum(axis=1)
    cols = minor.sum(axis=0)
    s = minor * (rows[:, None] + cols[None, :])
    c, _, _ = _c_from_s(s, minor.astype(bool))
    return c


def _minor_failures(g: Digraph) -> list[Arc]:
    """Arcs whose minor has a non-zero ``c``.

    ``c`` of a matrix vanishes exactly when, in every row, the non-zero ``s``
    entries are equal and likewise in every column.  In the minor for arc
    (i, j) row r holds ``outdeg(r) - [r->j] + indeg(x) - [i->x]`` at each head
    x != j, so a row is uniform iff ``indeg(x) - [i->x]`` is.  That value only
    depends on the row's head set, on ``succ(i)`` and on ``j``; rows with equal
    head sets are evaluated once.  Columns are symmetric.
    """
    row_sets = Counter(frozenset(g.succ(r)) for r in range(g.n) if g.outdeg(r))
    col_sets = Counter(frozenset(g.pred(x)) for x in range(g.n) if g.indeg(x))
    row_cache: dict[tuple[frozenset, int], bool] = {}
    col_cache: dict[tuple[frozenset, int], bool] = {}

    def rows_ok(ni: frozenset, j: int) -> bool:
        key = (ni, j)
        if key not in row_cache:
            ok = True
            for heads, count in row_sets.items():
                if heads == ni and count == 1:
                    continue  # only row i carries this head set, and it is deleted
                vals = {g.indeg(x) - (x in ni) for x in heads if x != j}
                if len(vals) > 1:
                    ok = False
                    break
            row_cache[key] = ok
        return row_cache[key]

    def cols_ok(pj: frozenset, i: int) -> bool:
        key = (pj, i)
        if key not in col_cache:
            ok = True
            for tails, count in col_sets.items():
                if tails == pj and count == 1:
                    continue
                vals = {g.outdeg(r) - (r in pj) for r in tails if r != i}
                if len(vals) > 1:
                    ok = False
                    break
            col_cache[key] = ok
        return col_cache[key]

    failed = []
    for i, j in g.arcs:
        ni = frozenset(g.succ(i))
        pj = frozenset(g.pred(j))
        if not (rows_ok(ni, j) and cols_ok(pj, i)):
            failed.append((i, j))
    return failed


@dataclass(frozen=True)
class DualityVerdict:
    quasi_canonical: bool
    canonical: bool | None
    violating_arcs: tuple[tuple[int, int, str], ...]
    minor_failures: tuple[Arc, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "quasi_canonical": self.quasi_canonical,
            "canonical": self.canonical,
            "violating_arcs": [
                {"tail": t, "head": h, "reason": r} for t, h, r in self.violating_arcs
            ],
            "minor_failures": [list(a) for a in self.minor_failures],
        }


def _c_violations(L: RoleMatrix) -> list[tuple[int, int, str]]:
    c = c_matrix(L).c
    return [(i, j, f"c={int(c[i, j])}") for i, j in L.graph.arcs if c[i, j] != 0]


def is_quasi_canonical(L: RoleMatrix) -> DualityVerdict:
    """Full-matrix ``c == 0`` and, for every arc, ``c == 0`` on its minor."""
    _require(L, Role.L)
    violating = _c_violations(L)
    minors = _minor_failures(L.graph)
    return DualityVerdict(
        quasi_canonical=not violating and not minors,
        canonical=None,
        violating_arcs=tuple(violating),
        minor_failures=tuple(minors),
    )


def degree_violations(g: Digraph) -> list[Arc]:
    """Arcs leaving a branch vertex and entering a merge vertex."""
    return [(x, y) for x, y in g.arcs if g.outdeg(x) >= 2 and g.indeg(y) >= 2]


def is_canonical(L: RoleMatrix) -> DualityVerdict:
    """Quasi-canonical, and no arc runs from a branch vertex to a merge vertex.

    Such an arc is exactly a complicated shared vertex of the edge graph, the
    only thing that makes its cyclomatic number fall below the vertex graph's.
    Accepts ``L`` or ``R`` roles since both read the same 0/1 pattern.
    """
    _require(L, Role.L, Role.R)
    quasi = is_quasi_canonical(L.as_role(Role.L))
    deg = [(x, y, "branch-tail/merge-head") for x, y in degree_violations(L.graph)]
    violating = sorted(quasi.violating_arcs + tuple(deg))
    return DualityVerdict(
        quasi_canonical=quasi.quasi_canonical,
        canonical=quasi.quasi_canonical and not deg,
        violating_arcs=tuple(violating),
        minor_failures=quasi.minor_failures,
    )


@dataclass(frozen=True)
class VertexKind:
    """A shared vertex of the reconstructed edge graph and its block sizes."""

    vertex: int
    kind: str  # "elementary" | "simple" | "complicated"
    k: int  # in-arc count
    p: int  # out-arc count

    @property
    def is_simple(self) -> bool:
        return self.kind in ("simple", "elementary")


def _kind(k: int, p: int) -> str:
    if k >= 2 and p >= 2:
        return "complicated"
    if k == 1 and p == 1:
        return "elementary"
    return "simple"


def classify_vertices(R: RoleMatrix) -> list[VertexKind]:
    """Kinds of the shared vertexes (both in- and out-arcs) of the root graph."""
    from .convert import reverse_convert

    _require(R, Role.R, Role.L)
    h = reverse_convert(R.as_role(Role.R))
    return [
        VertexKind(v, _kind(h.indeg(v), h.outdeg(v)), h.indeg(v), h.outdeg(v))
        for v in range(h.n)
        if h.indeg(v) >= 1 and h.outdeg(v) >= 1
    ]
