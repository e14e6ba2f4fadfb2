"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io as gio
from .classify import classify_graph, predict_growth, predict_nus
from .convert import (
    AUGMENT_MODES,
    DEFAULT_SIZE_CAP,
    AugmentError,
    iterate_convert,
    label_table,
    roundtrip_isomorphism,
)
from .core import GraphError
from .duality import RoleMatrix, is_canonical
from .hamilton import OracleBoundError, brute_force_hamilton, hamilton_cycles_via_duality
from .normalize import NormalizationError, normalize_canonical, quasi_normalize
from .reports import matrix_text, to_json, trace_csv, trace_rows, write_csv, yes_no

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _read(path: str):
    if path == "-":
        return gio.parse(sys.stdin.read())
    return gio.read_graph(path)


def cmd_check(args, g, out) -> int:
    verdict = is_canonical(RoleMatrix(g))
    if args.json:
        out.write(to_json(verdict.to_dict()))
    else:
        out.write(
            f"quasi-canonical: {yes_no(verdict.quasi_canonical)}, "
            f"canonical: {yes_no(verdict.canonical)}\n"
        )
        for t, h, reason in verdict.violating_arcs:
            out.write(f"violating arc {t} {h}: {reason}\n")
        for t, h in verdict.minor_failures:
            out.write(f"minor failure at arc {t} {h}\n")
    ok = verdict.canonical if args.canonical else verdict.quasi_canonical
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_normalize(args, g, out) -> int:
    run = normalize_canonical if args.target == "canonical" else quasi_normalize
    try:
        report = run(RoleMatrix(g), strategy=args.strategy)
    except NormalizationError as exc:
        out.write(to_json(exc.report.to_dict()) if args.json else f"error: {exc}\n")
        return EXIT_CHECK_FAILED
    result = report.result.graph
    if args.json:
        payload = report.to_dict()
        payload["before"] = gio.emit(g)
        payload["after"] = gio.emit(result)
        out.write(to_json(payload))
        return EXIT_OK
    out.write(f"target: {report.target}\n")
    out.write(f"insertions: {report.s_q} in {report.rounds} rounds, converged: {yes_no(report.converged)}\n")
    if report.s_q_is_n2_minus_1:
        out.write("note: insertion count equals n^2 - 1\n")
    for (x, y), v in report.steps:
        out.write(f"split {x} {y} with vertex {v}\n")
    out.write("before:\n" + matrix_text(g))
    out.write("after:\n" + matrix_text(result))
    out.write("graph:\n" + gio.emit(result))
    return EXIT_OK


def _augment(args) -> str:
    return "faithful" if args.faithful else args.augment


def cmd_convert(args, g, out) -> int:
    try:
        trace = iterate_convert(g, args.steps, _augment(args), cap=args.cap)
    except AugmentError as exc:
        out.write(f"error: {exc}\n")
        return EXIT_INPUT
    if args.format == "csv":
        out.write(trace_csv(trace))
    elif args.format == "dot":
        for s in trace.steps:
            out.write(gio.to_dot(s.graph, name=f"H{s.index + 1}"))
    else:
        for s in trace.steps[1:]:
            rows = label_table(s)
            out.write(f"# step {s.index + 1}\n")
            out.write(write_csv(("arc", "begin", "end", "tuple"), rows))
    if trace.cap_event is not None:
        ev = trace.cap_event
        out.write(f"# size cap {ev.cap} exceeded at step {ev.step + 1}: next graph would have {ev.predicted_size} vertexes\n")
        return EXIT_CAP
    return EXIT_OK


def cmd_classify(args, g, out) -> int:
    report = classify_graph(g, predict_steps=max(args.verify, 6))
    table = []
    cap_hit = None
    if args.verify:
        trace = iterate_convert(g, args.verify, "faithful" if report.standing_assumptions else "none", cap=args.cap)
        cap_hit = trace.cap_event
        nus = predict_nus(g, args.verify)
        for s in trace.steps:
            table.append((s.index + 1, report.predicted_growth[s.index], s.n, nus[s.index], s.nu))
    if args.json:
        payload = report.to_dict()
        if args.verify:
            payload["verify"] = [
                dict(zip(("step", "predicted_n", "observed_n", "predicted_nu", "observed_nu"), row))
                for row in table
            ]
        out.write(to_json(payload))
    else:
        out.write(f"class: {report.cls} ({report.name})\n")
        for c in report.contours:
            out.write("contour: " + " ".join(map(str, c)) + "\n")
        for iv in report.intervals:
            out.write(f"interval: {' '.join(map(str, iv.path))} (length {iv.length})\n")
        out.write(f"j_max: {'unbounded' if report.j_max is None else report.j_max}\n")
        out.write(f"canonical: {yes_no(report.canonical)}\n")
        for w in report.warnings:
            out.write(f"warning: {w}\n")
        if args.verify:
            out.write(write_csv(("step", "predicted_n", "observed_n", "predicted_nu", "observed_nu"), table))
    if cap_hit is not None:
        return EXIT_CAP
    mismatch = any(r[1] != r[2] or r[3] != r[4] for r in table) if report.standing_assumptions else False
    return EXIT_CHECK_FAILED if mismatch else EXIT_OK


def cmd_grow(args, g, out) -> int:
    augment = _augment(args)
    if augment == "auto":
        out.write("error: grow predicts growth for --augment none or faithful only\n")
        return EXIT_INPUT
    conversions = max(args.steps - 1, 0)
    try:
        trace = iterate_convert(g, conversions, augment, cap=args.cap)
    except AugmentError as exc:
        out.write(f"error: {exc}\n")
        return EXIT_INPUT
    sizes = predict_growth(g, conversions, augment)
    nus = predict_nus(g, conversions)
    rows = [row + (sizes[i], nus[i]) for i, row in enumerate(trace_rows(trace))]
    out.write(write_csv(("step", "n", "m", "nu", "delta_nu", "class", "predicted_n", "predicted_nu"), rows))
    if trace.cap_event is not None:
        ev = trace.cap_event
        out.write(f"# size cap {ev.cap} exceeded at step {ev.step + 1}: next graph would have {ev.predicted_size} vertexes\n")
        return EXIT_CAP
    return EXIT_OK


def cmd_hamilton(args, g, out) -> int:
    try:
        oracle = brute_force_hamilton(g, bound=args.oracle_bound) if args.oracle else None
    except OracleBoundError as exc:
        out.write(f"error: {exc}\n")
        return EXIT_INPUT
    cycles = hamilton_cycles_via_duality(g, form=args.form)
    if args.json:
        payload = {"count": len(cycles), "cycles": [list(c) for c in cycles]}
        if oracle is not None:
            payload["oracle_count"] = len(oracle)
            payload["agree"] = oracle == cycles
        out.write(to_json(payload))
    else:
        out.write(f"hamilton cycles: {len(cycles)}\n")
        if args.list or not args.count:
            for c in cycles:
                out.write(" ".join(map(str, c)) + "\n")
        if oracle is not None:
            out.write(f"oracle: {len(oracle)}, agree: {yes_no(oracle == cycles)}\n")
    if oracle is not None and oracle != cycles:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_roundtrip(args, g, out) -> int:
    ok, detail = roundtrip_isomorphism(g)
    if args.json:
        out.write(to_json({"isomorphic": ok, "detail": detail}))
    else:
        out.write(f"roundtrip: {detail}\n")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphduality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="arc-list file, or - for standard input")
        p.add_argument("--json", action="store_true", help="structured output")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "quasi-canonical / canonical verdict")
    p.add_argument("--canonical", action="store_true", help="fail unless canonical")

    p = add("normalize", cmd_normalize, "subdivide arcs into quasi-canonical or canonical form")
    p.add_argument("--target", choices=("quasi", "canonical"), default="quasi")
    p.add_argument("--strategy", choices=("sweep", "immediate"), default="sweep")

    for name, func, help_text, default_aug in (
        ("convert", cmd_convert, "iterated straight converting", "none"),
        ("grow", cmd_grow, "predicted vs observed growth table", "faithful"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--steps", type=int, default=3)
        p.add_argument("--augment", choices=AUGMENT_MODES, default=default_aug)
        p.add_argument("--faithful", action="store_true", help="add entrance and exit at every step")
        p.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP, help="vertex cap per step")
        if name == "convert":
            p.add_argument("--format", choices=("csv", "dot", "table"), default="csv")

    p = add("classify", cmd_classify, "converting class and witnesses")
    p.add_argument("--verify", type=int, default=0, metavar="K", help="compare prediction with K convertings")
    p.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP)

    p = add("hamilton", cmd_hamilton, "Hamilton cycles through Euler partial graphs")
    p.add_argument("--count", action="store_true", help="print only the count")
    p.add_argument("--list", action="store_true", help="print every cycle")
    p.add_argument("--oracle", action="store_true", help="compare with brute force")
    p.add_argument("--oracle-bound", type=int, default=10)
    p.add_argument("--form", choices=("canonical", "quasi"), default="canonical")

    add("roundtrip", cmd_roundtrip, "straight then reverse converting, isomorphism verdict")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        g = _read(args.input)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, g, out)
    except NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
