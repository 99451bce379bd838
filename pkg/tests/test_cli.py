import json
import os
import subprocess
import sys

import pytest

from jcrystal.cli import main


def _run(*args, env=None):
    e = dict(os.environ)
    e.pop("JCRYSTAL_CACHE_DIR", None)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "jcrystal", *args], capture_output=True, text=True, env=e)


def test_kl_columns(capsys):
    assert main(["kl", "--d", "2", "--kind", "C"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["columns"]) == 8 and data["kind"] == "C"


def test_kl_csv(capsys):
    assert main(["kl", "--d", "1", "--kind", "D", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("w,y,coefficient")


def test_crystal_graph(capsys):
    assert main(["crystal-graph", "--r", "1", "--bipartition", "((2,0);(0))"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph crystal {")
    assert out.count('[label="f1"]') == 2
    assert sum(1 for line in out.splitlines() if "[label=" in line and "->" not in line) == 3


def test_verify_ring(capsys):
    assert main(["verify", "--suite", "ring"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1].startswith("PASS suite ring")


def test_irrep_to_file(tmp_path):
    out = tmp_path / "x.json"
    assert main(["irrep", "--r", "2", "--bipartition", "((1,0,0);(0,0))", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["dim"] == 3


def test_cells_and_schur(capsys):
    assert main(["cells", "--d", "2"]) == 0
    assert len(json.loads(capsys.readouterr().out)["cells"]) == 6
    assert main(["schur", "--r", "1", "--d", "2"]) == 0
    rep = json.loads(capsys.readouterr().out)["report"]
    assert all(v == [] for v in rep.values())


@pytest.mark.parametrize("args", [
    ["irrep", "--r", "1", "--bipartition", "((2,0),(0))"],
    ["irrep", "--r", "1", "--bipartition", "((0,2);(0))"],
    ["irrep", "--r", "2", "--bipartition", "((2,0);(0))"],
    ["irrep", "--r", "3", "--bipartition", "((1,0,0,0);(0,0,0))"],
    ["kl", "--d", "0"],
    ["verify", "--suite", "nope"],
    ["kl", "--kind", "X", "--d", "1"],
    [],
])
def test_usage_errors_exit_2(args, capsys):
    assert main(args) == 2


def test_verification_failure_exits_1(monkeypatch, capsys):
    from jcrystal import suites
    monkeypatch.setitem(suites.SUITES, "ring", [("broken", lambda: [("witness", 1)])])
    assert main(["verify", "--suite", "ring"]) == 1
    assert 'FAIL ring.broken [["witness", "1"]]' in capsys.readouterr().out


def test_bounds_warning():
    with pytest.warns(UserWarning):
        from jcrystal.cli import RunConfig
        RunConfig(r=2, d=5)


def test_env_cache_dir_and_flag_precedence(tmp_path):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    r = _run("kl", "--d", "2", env={"JCRYSTAL_CACHE_DIR": str(env_dir)})
    assert r.returncode == 0 and (env_dir / "B2-C.json").exists()
    r2 = _run("--cache-dir", str(flag_dir), "kl", "--d", "2", env={"JCRYSTAL_CACHE_DIR": str(env_dir)})
    assert r2.returncode == 0 and (flag_dir / "B2-C.json").exists()
    assert r.stdout == r2.stdout


def test_console_module_entry():
    r = _run("verify", "--suite", "weyl_b", "--jobs", "2")
    assert r.returncode == 0 and "PASS weyl_b.orders" in r.stdout
