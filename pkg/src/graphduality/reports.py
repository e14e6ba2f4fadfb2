"""Text, CSV and JSON renderings shared by the CLI."""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable

from .classify import delta_nu, quick_class
from .convert import ConvertTrace
from .core import Digraph

TRACE_COLUMNS = ("step", "n", "m", "nu", "delta_nu", "class")


def to_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_csv(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def trace_rows(trace: ConvertTrace) -> list[tuple]:
    """One row per graph of the trace; ``step`` is 1-based (the input is step 1)."""
    return [
        (s.index + 1, s.n, s.m, s.nu, delta_nu(s.graph), quick_class(s.graph))
        for s in trace.steps
    ]


def trace_csv(trace: ConvertTrace) -> str:
    return write_csv(TRACE_COLUMNS, trace_rows(trace))


def matrix_text(g: Digraph) -> str:
    rows = []
    for u in range(g.n):
        succ = set(g.succ(u))
        rows.append(" ".join("1" if v in succ else "0" for v in range(g.n)))
    return "\n".join(rows) + ("\n" if rows else "")


def yes_no(flag: bool | None) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"
