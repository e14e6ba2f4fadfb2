"""Arc-list text format and DOT export.

Format, one item per line::

    # n=4
    label 0 A
    0 1
    1 2

The ``# n=`` header is optional (defaults to one more than the largest id);
any other line starting with ``#`` is a comment.  ``emit`` writes the header,
then label lines in id order, then arcs in lexicographic order, so
``emit(parse(text)) == text`` for any text ``emit`` produced.
"""
from __future__ import annotations

import re

from .core import Digraph, GraphError, build_digraph

_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse(text: str) -> Digraph:
    n = None
    arcs: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    arc_lines: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                if n is not None:
                    raise ParseError(lineno, "duplicate '# n=' header")
                n = int(m.group(1))
            continue
        if line.startswith("label"):
            parts = line.split(maxsplit=2)
            if len(parts) != 3 or not parts[1].isdigit():
                raise ParseError(lineno, f"malformed label line {raw!r}")
            vid = int(parts[1])
            if vid in labels:
                raise ParseError(lineno, f"vertex {vid} labelled twice")
            labels[vid] = parts[2]
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(lineno, f"expected 'tail head', got {raw!r}")
        arc = (int(parts[0]), int(parts[1]))
        if arc[0] == arc[1]:
            raise ParseError(lineno, f"self-loop at vertex {arc[0]}")
        if arc in arc_lines:
            raise ParseError(lineno, f"duplicate arc {arc} (first on line {arc_lines[arc]})")
        arc_lines[arc] = lineno
        arcs.append(arc)
    ids = [v for a in arcs for v in a] + list(labels)
    if n is None:
        n = max(ids, default=-1) + 1
    for arc, lineno in arc_lines.items():
        if max(arc) >= n:
            raise ParseError(lineno, f"arc {arc} exceeds declared n={n}")
    for vid in labels:
        if vid >= n:
            raise ParseError(0, f"label for vertex {vid} exceeds declared n={n}")
    label_list = [labels.get(v) for v in range(n)] if labels else None
    return build_digraph(n, arcs, label_list)


def emit(g: Digraph) -> str:
    lines = [f"# n={g.n}"]
    if g.labels is not None:
        lines.extend(f"label {v} {lab}" for v, lab in enumerate(g.labels) if lab is not None)
    lines.extend(f"{u} {v}" for u, v in g.arcs)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Digraph, name: str = "G") -> str:
    lines = [f"digraph {_dot_quote(name)} {{"]
    for v in range(g.n):
        lines.append(f"  {v} [label={_dot_quote(g.label(v))}];")
    lines.extend(f"  {u} -> {v};" for u, v in g.arcs)
    lines.append("}")
    return "\n".join(lines) + "\n"
