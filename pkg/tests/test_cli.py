import csv
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from hexmds import tiling as tl
from hexmds.cli import ALGOS, BENCH_FIELDS, main


@pytest.fixture
def inst_path(tmp_path):
    path = tmp_path / "inst.csv"
    assert main(["generate", "--n", "14", "--width", "4", "--height", "4", "--seed", "42", "--out", str(path)]) == 0
    return path


def solve(path, tmp_path, *extra):
    out = tmp_path / "report.json"
    code = main(["solve", str(path), "--out", str(out), *extra])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_generate_to_stdout_is_deterministic(capsys):
    main(["generate", "--n", "5", "--seed", "3"])
    first = capsys.readouterr().out
    main(["generate", "--n", "5", "--seed", "3"])
    assert capsys.readouterr().out == first
    assert first.startswith("# name: uniform-n5-s3")


def test_generate_clustered_json(tmp_path):
    out = tmp_path / "c.json"
    assert main(["generate", "--kind", "clustered", "--n", "20", "--clusters", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["points"]) == 20 and data["generator"] == "splitmix64"


@pytest.mark.parametrize("algo", [a for a in ALGOS if a != "ptas"])
def test_solve_each_algorithm(inst_path, tmp_path, algo):
    code, report = solve(inst_path, tmp_path, "--algo", algo, "--oracle")
    assert code == 0
    assert report["valid"] and report["size"] == len(report["chosen"])
    assert report["oracle_size"] == 4 and report["ratio"] == report["size"] / 4
    assert set(report) >= {"algo", "params", "instance", "size", "chosen", "valid", "millis"}


def test_solve_ptas_needs_k(inst_path, tmp_path):
    assert solve(inst_path, tmp_path, "--algo", "ptas")[0] == 2
    code, report = solve(inst_path, tmp_path, "--algo", "ptas", "--k", "2")
    assert code == 0 and report["params"]["k"] == 2 and report["params"]["guarantee"] == pytest.approx(2.25)


def test_solve_guards(inst_path, tmp_path):
    assert solve(inst_path, tmp_path, "--algo", "exact", "--exact-limit", "5")[0] == 3
    assert solve(inst_path, tmp_path, "--algo", "ptas", "--k", "3", "--window-limit", "2")[0] == 3


def test_solve_usage_and_io_errors(inst_path, tmp_path):
    assert main(["solve", str(inst_path)]) == 2
    assert main(["solve", str(inst_path), "--algo", "four", "--grid-offset", "1"]) == 2
    assert main(["solve", str(tmp_path / "missing.csv"), "--algo", "four"]) == 4
    bad = tmp_path / "bad.csv"
    bad.write_text("1.0;2.0\n")
    assert main(["solve", str(bad), "--algo", "four"]) == 4
    assert main(["solve", str(inst_path), "--algo", "four", "--threads", "0"]) == 2


def test_solve_with_monochrome_tiling_file(inst_path, tmp_path):
    desc = tmp_path / "mono.json"
    desc.write_text(tl.default_septa().with_colors(1, ((0,),)).dumps())
    code, report = solve(inst_path, tmp_path, "--algo", "four", "--tiling", str(desc))
    assert code == 3 and report["valid"] and report["params"]["guarantee"] is None
    assert solve(inst_path, tmp_path, "--algo", "five-half", "--tiling", str(desc))[0] == 2


def test_verify_verdicts(inst_path, tmp_path, capsys):
    code, report = solve(inst_path, tmp_path, "--algo", "exact")
    rep = tmp_path / "report.json"
    assert main(["verify", str(inst_path), str(rep)]) == 0
    rep.write_text(json.dumps({"chosen": report["chosen"][1:]}))
    capsys.readouterr()
    assert main(["verify", str(inst_path), str(rep)]) == 1
    assert "not dominating: point" in capsys.readouterr().out
    foreign = tmp_path / "foreign.csv"
    foreign.write_text("100,100\n")
    assert main(["verify", str(inst_path), str(foreign)]) == 1
    assert "not a subset" in capsys.readouterr().out
    assert main(["verify", str(inst_path), str(tmp_path / "nope.json")]) == 4


def test_tilings_validate(tmp_path):
    out = tmp_path / "rep.json"
    assert main(["tilings", "validate", "--tiling", "septa", "--samples", "500", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True
    assert main(["tilings", "validate", "--tiling", "supercell", "--samples", "500", "--monochrome", "--out", str(out)]) == 3
    assert "same_color_separation" in json.loads(out.read_text())["violations"]
    assert main(["tilings", "validate", "--patch", "2", "--out", str(out)]) == 2
    junk = tmp_path / "junk.json"
    junk.write_text('{"kind": "septa"}')
    assert main(["tilings", "validate", "--tiling", str(junk)]) == 3


def test_bench(tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({"instances": [
        {"generator": "uniform", "n": 10, "width": 3, "height": 3, "seed": 1},
        {"generator": "clustered", "n": 12, "clusters": 2, "spread": 0.5, "width": 4, "height": 4, "seed": 2},
    ]}))
    out = tmp_path / "b.csv"
    assert main(["bench", "--suite", str(suite), "--algos", "four,ptas", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 4 and tuple(rows[0]) == BENCH_FIELDS
    assert all(r["status"] == "ok" and r["valid"] == "True" and float(r["ratio"]) >= 1 for r in rows)


def test_bench_empty_and_failing(tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text('{"instances": []}')
    out = tmp_path / "b.csv"
    assert main(["bench", "--suite", str(suite), "--out", str(out)]) == 0
    assert out.read_text().strip() == ",".join(BENCH_FIELDS)
    suite.write_text(json.dumps([{"n": 5, "width": 2, "height": 2, "seed": 0}]))
    assert main(["bench", "--suite", str(suite), "--algos", "four,bogus", "--out", str(out)]) != 0
    rows = list(csv.DictReader(out.open()))
    assert rows[0]["status"] == "ok" and rows[1]["status"].startswith("failed")


def test_render(inst_path, tmp_path):
    solve(inst_path, tmp_path, "--algo", "exact")
    out = tmp_path / "pic.svg"
    assert main(["render", str(inst_path), "--solution", str(tmp_path / "report.json"), "--out", str(out)]) == 0
    first = out.read_text()
    ET.fromstring(first.encode())
    main(["render", str(inst_path), "--solution", str(tmp_path / "report.json"), "--out", str(out)])
    assert out.read_text() == first
    assert main(["render", str(inst_path), "--tiling", "none", "--out", str(out)]) == 0


def test_module_entry_point(inst_path):
    res = subprocess.run([sys.executable, "-m", "hexmds", "solve", str(inst_path), "--algo", "four"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and json.loads(res.stdout)["valid"]
