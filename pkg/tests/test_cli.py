import json
import subprocess
import sys
from pathlib import Path

import pytest

from spinaction.cli import (
    RunReport,
    genus_report_from_json,
    genus_report_to_json,
    main,
)
from spinaction.topology import SurfaceClass, connected_sum_cp2, genus_bound

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["bound", "--input", str(DATA / "cp2_cp2_6_2.json")], "bound_cp2_cp2_6_2.txt"),
        (["bound", "--input", str(DATA / "s2xs2_cp2_4_4_6.json")], "bound_s2xs2_cp2_4_4_6.txt"),
        (["bound", "--input", str(DATA / "sum3_cp2_p2.json")], "bound_sum3_cp2_p2.txt"),
        (["degree", "--input", str(DATA / "furuta.json")], "degree_furuta.txt"),
        (["k3", "even"], "k3_even.txt"),
    ],
    ids=lambda x: x if isinstance(x, str) else None,
)
def test_golden(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_bound_json(capsys):
    code, out, _ = run(capsys, "--json", "bound", "--input", str(DATA / "cp2_cp2_6_2.json"))
    assert code == 0
    report = RunReport.from_json(out)
    assert report.result["effective_min_genus"] == 10
    assert RunReport.from_json(report.to_json()) == report


def test_bound_hypothesis_failure(capsys):
    code, out, _ = run(capsys, "--json", "bound", "--input", str(DATA / "odd_class.json"))
    assert code == 2
    report = RunReport.from_json(out)
    failed = [d["name"] for d in report.diagnostics if not d["passed"]]
    assert failed[0] == "divisibility"


def test_bound_malformed(capsys):
    code, _, err = run(capsys, "bound", "--input", str(DATA / "malformed.json"))
    assert code == 1
    assert "error" in err


def test_bound_unreadable(capsys, tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text("{not json")
    assert run(capsys, "bound", "--input", str(bad))[0] == 1
    assert run(capsys, "bound", "--input", str(tmp_path / "missing.json"))[0] == 1


def test_bound_rank_mismatch(capsys, tmp_path):
    doc = {"version": 1, "form": [{"diag": [1, 1]}], "class": [2], "p": 1}
    f = tmp_path / "d.json"
    f.write_text(json.dumps(doc))
    assert run(capsys, "bound", "--input", str(f))[0] == 1


def test_degree_odd(capsys):
    code, out, _ = run(capsys, "degree", "--input", str(DATA / "odd_p1.json"))
    assert code == 0
    assert "m ≥ 2k+1+p  [m ≥ 2k+1+1]" in out
    assert "FAILS" in out


def test_degree_pole_report(capsys):
    code, out, _ = run(capsys, "--json", "degree", "--input", str(DATA / "pole_z2.json"))
    assert code == 0
    report = RunReport.from_json(out)
    assert report.result["outcome"] == "inconsistent"
    assert report.result["pole_certificate"]["certified"] is True


def test_degree_bad_parity(capsys, tmp_path):
    doc = {"version": 1, "group": {"kind": "odd", "p": 1}, "s": [1, 2], "t": [1]}
    f = tmp_path / "d.json"
    f.write_text(json.dumps(doc))
    assert run(capsys, "degree", "--input", str(f))[0] == 1


def test_degree_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO((DATA / "furuta.json").read_text()))
    code, out, _ = run(capsys, "degree", "--input", "-")
    assert code == 0 and "α = 1 - t1" in out


@pytest.mark.parametrize("flag", ["even", "odd", "construction"])
def test_k3_json_round_trip(capsys, flag):
    code, out, _ = run(capsys, "--json", "k3", flag)
    assert code == 0
    report = RunReport.from_json(out)
    assert RunReport.from_json(report.to_json()) == report
    if flag == "odd":
        assert report.result["b2plus_quotient"] == 1
    if flag == "construction":
        assert report.result["signature_cover"] == -24 and report.diagnostics


@pytest.mark.parametrize(
    "expr,normal",
    [("h1*h1", "h2 + 1 + t1"), ("(1 - t1)^2", "2 - 2*t1"), ("h1*h2", "h3 + h1")],
)
def test_ring(capsys, expr, normal):
    code, out, _ = run(capsys, "ring", expr)
    assert code == 0
    assert out.splitlines()[0] == f"{expr} = {normal}"


def test_ring_characters(capsys):
    code, out, _ = run(capsys, "--json", "ring", "z1*h1 + t1", "--odd", "1")
    assert code == 0
    report = RunReport.from_json(out)
    assert report.result["characters"]["J"] == "-1"
    assert report.result["characters"]["J·ν"] == "-1"


def test_ring_errors(capsys):
    assert run(capsys, "ring", "h1 +")[0] == 1
    assert run(capsys, "ring", "z2", "--even", "2")[0] == 1
    assert run(capsys, "ring", "h1^-1")[0] == 1


def test_genus_report_round_trip():
    r = genus_bound(connected_sum_cp2(4), SurfaceClass((4,) * 4), 2)
    assert genus_report_from_json(json.loads(json.dumps(genus_report_to_json(r)))) == r


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spinaction", "ring", "h1*h2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("h1*h2 = h3 + h1")
