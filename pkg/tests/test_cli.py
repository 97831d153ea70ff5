from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rigidlab.cli import main
from rigidlab.exact_linalg import Matrix
from rigidlab.graph import complete_bipartite


@pytest.fixture
def files(tmp_path):
    (tmp_path / "k33.g").write_text(complete_bipartite(3, 3).to_text())
    (tmp_path / "p.cfg").write_text("6 2\n0 0\n1 0\n0 1\n2 3\n-1 5\n3/2 -7\n")
    (tmp_path / "k4p.cfg").write_text("4 2\n0 0\n1 0\n0 1\n2 3\n")
    (tmp_path / "coinc.cfg").write_text("4 2\n0 0\n1 0\n1 0\n2 3\n")
    (tmp_path / "bad.g").write_text("3 2\n1 2\n1 2 3\n")
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_matrix(files, capsys):
    out_path = files / "m.txt"
    code, _, _ = run(["build-matrix", "--builder", "hyper", "--graph", files / "k33.g",
                      "--points", files / "p.cfg", "--out", out_path], capsys)
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("# builder=hyperconnectivity")
    M = Matrix.from_text(text)
    assert (M.rows, M.cols) == (9, 12)


def test_build_matrix_errors(files, capsys):
    code, _, err = run(["build-matrix", "--builder", "hyper", "--graph", files / "bad.g",
                        "--points", files / "p.cfg"], capsys)
    assert code == 2 and "Traceback" not in err
    code, _, err = run(["build-matrix", "--builder", "cofactor", "--graph", "K4",
                        "--points", files / "coinc.cfg", "--d", "3"], capsys)
    assert code == 3 and "coincident" in err
    code, _, _ = run(["build-matrix", "--builder", "hyper", "--graph", "K4"], capsys)
    assert code == 2
    code, _, _ = run(["build-matrix", "--builder", "poly", "--graph", "K3", "--params", "1,2,2",
                      "--d", "2"], capsys)
    assert code == 3


def test_rank(files, capsys):
    code, out, _ = run(["rank", "--builder", "bar_joint", "--graph", "K4", "--points",
                        files / "k4p.cfg"], capsys)
    r = json.loads(out)
    assert code == 0
    assert (r["rank"], r["corank"], r["circuit"], r["independent"], r["spanning"]) == (5, 1, True, False, True)
    code, out, _ = run(["rank", "--builder", "bar_joint", "--graph", "K4", "--points",
                        files / "k4p.cfg", "--subset", ""], capsys)
    assert json.loads(out)["rank"] == 0
    code, out, _ = run(["rank", "--builder", "hyper", "--graph", "K4x4", "--d", "3", "--seed", "2"], capsys)
    assert json.loads(out)["rank"] == 15
    code, _, _ = run(["rank", "--builder", "hyper", "--graph", "K4", "--d", "2", "--subset", "1-9"], capsys)
    assert code == 3


def test_verify_default_suite(capsys):
    code, out, _ = run(["verify", "--seed", "42"], capsys)
    env = json.loads(out)
    assert code == 0 and env["status"] == "pass" and env["schema"] == "rigidlab/1"
    assert all(c["status"] == "pass" for c in env["checks"])


def test_verify_negative_control(tmp_path, capsys):
    m = tmp_path / "neg.txt"
    m.write_text("property builder=bar_joint graph=K4 d=2 property=independent\n")
    code, out, _ = run(["verify", m, "--seed", "1"], capsys)
    env = json.loads(out)
    assert code == 1 and env["status"] == "fail"
    assert env["checks"][0]["details"]["witness"]["subset"] == "1-2,1-3,1-4,2-3,2-4,3-4"


def test_verify_sampled_mode(tmp_path, capsys):
    m = tmp_path / "s.txt"
    m.write_text("coincidence_matroids d=2 n=4\nbipartite_freeness d=2 n1=2 n2=3\n")
    code, out, _ = run(["verify", m, "--exhaustive-limit", "0"], capsys)
    env = json.loads(out)
    assert code == 0 and env["probabilistic"]
    assert {c["status"] for c in env["checks"]} == {"probabilistic-pass"}


def test_verify_parse_error(tmp_path, capsys):
    m = tmp_path / "bad.txt"
    m.write_text("coincidence d=2\n")
    assert run(["verify", m], capsys)[0] == 2
    assert run(["verify", tmp_path / "missing.txt"], capsys)[0] == 2


def test_reports_are_deterministic(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    m = tmp_path / "m.txt"
    m.write_text("coincidence d=3 n=5\nrandom_splits builder=poly d=2 count=4\n")
    outs = [run(["verify", m, "--seed", "9"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]
    other = run(["verify", m, "--seed", "10"], capsys)[1]
    assert other != outs[0]


def test_probe(capsys):
    code, out, _ = run(["probe", "--n", "6", "--d", "2", "--samples", "10", "--seed", "1"], capsys)
    env = json.loads(out)
    assert code == 0 and env["decisive"] is False
    samples = env["checks"][0]["details"]["samples"]
    assert all(s["H"] <= s["R"] for s in samples)
    code, out, _ = run(["probe", "--n", "10", "--d", "3", "--samples", "2"], capsys)
    fx = json.loads(out)["checks"][0]["details"]["fixtures"]["K4x6"]
    assert (fx["R"], fx["C"], fx["H"], fx["P"]) == (24, 24, 21, 21)


def test_bad_arguments(capsys):
    assert run(["probe", "--n", "40", "--d", "2"], capsys)[0] == 2
    assert run(["probe", "--n", "x", "--d", "2"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["rank", "--builder", "zz", "--graph", "K4", "--d", "2"], capsys)[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rigidlab", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "rigidlab" in res.stdout
