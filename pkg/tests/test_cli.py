from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from conftest import SAMPLES
from graphduality.cli import main
from graphduality.io import parse


def run(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def sample(name: str) -> str:
    return str(SAMPLES / name)


def test_check():
    code, out = run("check", sample("path.txt"))
    assert code == 0 and out == "quasi-canonical: yes, canonical: yes\n"
    code, out = run("check", sample("merge_branch.txt"), "--canonical")
    assert code == 0
    code, out = run("check", sample("contour.txt"), "--json")
    assert json.loads(out)["quasi_canonical"] in (True, False)


def test_check_failure_exit_code(tmp_path):
    p = tmp_path / "fork.txt"
    p.write_text("# n=4\n0 1\n0 2\n3 1\n")
    code, out = run("check", str(p))
    assert code == 1
    assert "violating arc 0 1: c=2" in out


def test_normalize_outputs_graph(tmp_path):
    p = tmp_path / "fork.txt"
    p.write_text("# n=4\n0 1\n0 2\n3 1\n")
    code, out = run("normalize", str(p), "--target", "canonical")
    assert code == 0
    assert "split 0 1 with vertex 4" in out
    graph = parse(out.split("graph:\n", 1)[1])
    assert graph.n == 5 and graph.label(4) == "x+1"
    code, out = run("normalize", str(p), "--json")
    assert json.loads(out)["s_q"] == 1


def test_convert_csv_schema():
    code, out = run("convert", sample("path.txt"), "--steps", "2")
    assert code == 0
    assert out.splitlines() == [
        "step,n,m,nu,delta_nu,class",
        "1,3,2,0,0,H1",
        "2,2,1,0,0,H1",
        "3,1,0,0,0,H1",
    ]
    code, out = run("convert", sample("path.txt"), "--steps", "1", "--format", "dot")
    assert out.count("digraph") == 2


def test_convert_cap_exit_code():
    code, out = run("convert", sample("k3.txt"), "--steps", "12", "--cap", "50")
    assert code == 3 and "size cap 50 exceeded" in out


def test_grow_rises_once_then_settles():
    code, out = run("grow", sample("nu4_knot.txt"), "--steps", "4", "--faithful")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["step", "n", "m", "nu", "delta_nu", "class", "predicted_n", "predicted_nu"]
    assert [r[3] for r in rows[1:]] == ["4", "5", "5", "5"]
    assert all(r[1] == r[6] and r[3] == r[7] for r in rows[1:])


def test_grow_rejects_auto():
    assert run("grow", sample("path.txt"), "--augment", "auto")[0] == 2


def test_classify_with_verification():
    code, out = run("classify", sample("contour.txt"), "--verify", "4")
    assert code == 0
    assert out.startswith("class: H3 (progressive-heteronomous)\n")
    assert "step,predicted_n,observed_n,predicted_nu,observed_nu" in out
    code, out = run("classify", sample("path.txt"), "--json")
    assert json.loads(out)["class"] == "H1"


def test_hamilton():
    code, out = run("hamilton", sample("k3.txt"), "--oracle")
    assert code == 0
    assert out == "hamilton cycles: 2\n0 1 2 0\n0 2 1 0\noracle: 2, agree: yes\n"
    code, out = run("hamilton", sample("k3.txt"), "--count")
    assert out == "hamilton cycles: 2\n"
    code, out = run("hamilton", sample("k3.txt"), "--oracle", "--oracle-bound", "2")
    assert code == 2


def test_roundtrip(tmp_path):
    assert run("roundtrip", sample("nu4_knot.txt")) == (0, "roundtrip: isomorphic\n")
    # a branching source splits in two on the way back
    p = tmp_path / "fan.txt"
    p.write_text("# n=3\n0 1\n0 2\n")
    code, out = run("roundtrip", str(p))
    assert code == 1


@pytest.mark.parametrize("text", ["0 0\n", "0 1\n0 1\n", "a b\n"])
def test_bad_input_exit_code(tmp_path, text, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    assert run("check", str(p))[0] == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file():
    assert run("check", "/nonexistent/graph.txt")[0] == 2


def test_console_entry_point_reads_stdin():
    text = (SAMPLES / "path.txt").read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "graphduality", "check", "-"],
        input=text, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "quasi-canonical: yes, canonical: yes\n"
