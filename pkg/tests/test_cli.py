import json

import pytest

from cyclotomic_lgraphs.cli import EXIT_BAD_INPUT, EXIT_BUDGET, EXIT_PASS, main
from cyclotomic_lgraphs.families import chain, sporadic
from cyclotomic_lgraphs.lgraph import LGraph


def _write(tmp_path, g, name="g.json"):
    p = tmp_path / name
    p.write_text(g.to_json())
    return str(p)


def test_lnsets(capsys):
    assert main(["lnsets", "--d", "-7"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "L4:" in out and "±2" in out
    assert main(["lnsets", "--d", "-15"]) == EXIT_PASS
    lines = capsys.readouterr().out.splitlines()
    assert any(l.startswith("L2:") and "∅" in l for l in lines)
    assert any(l.startswith("L3:") and "∅" in l for l in lines)


def test_bad_ring_exit_code():
    assert main(["lnsets", "--d", "-5"]) == EXIT_BAD_INPUT
    assert main(["grow", "--d", "-3", "--seed", "weight3"]) == EXIT_BAD_INPUT
    assert main(["nonsense"]) == EXIT_BAD_INPUT


def test_check(tmp_path, capsys):
    assert main(["check", _write(tmp_path, sporadic("S_8*", -2))]) == EXIT_PASS
    rep = json.loads(capsys.readouterr().out)
    assert rep["cyclotomic"] and rep["maximal"] and rep["all_pm2"]
    assert main(["check", _write(tmp_path, LGraph(-2, [0]))]) == EXIT_PASS
    rep = json.loads(capsys.readouterr().out)
    assert rep["cyclotomic"] and not rep["maximal"]
    assert main(["check", _write(tmp_path, chain(2, -7))]) == EXIT_PASS
    assert not json.loads(capsys.readouterr().out)["maximal"]


def test_check_bad_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"d": -2, "charges": [0, 0], "edges": [[0, 1, [9, 0]]]}')
    assert main(["check", str(p)]) == EXIT_BAD_INPUT
    assert main(["check", str(tmp_path / "missing.json")]) == EXIT_BAD_INPUT


def test_grow(tmp_path, capsys):
    out = tmp_path / "grow.json"
    assert main(["grow", "--d", "-7", "--seed", "l1l2l1-path", "--norms", "1,2", "--json-out", str(out)]) == EXIT_PASS
    text = capsys.readouterr().out
    assert "S_6†" in text and "S_8*" in text
    report = json.loads(out.read_text())
    manifest = json.loads(out.with_suffix(".manifest.json").read_text())
    assert manifest["digest"] == report["digest"] and report["terminated"]


def test_grow_from_file_and_budget(tmp_path):
    seed = _write(tmp_path, LGraph(-2, [0, 0], {(0, 1): (1, 1)}))
    assert main(["grow", "--d", "-2", "--seed", seed]) == EXIT_PASS
    assert main(["grow", "--d", "-2", "--seed", "heavy", "--max-rounds", "1"]) == EXIT_BUDGET
    assert main(["grow", "--d", "-2", "--seed", "no-such-seed"]) == EXIT_BAD_INPUT
    assert main(["grow", "--d", "-11", "--seed", "charged-weight2"]) == EXIT_BAD_INPUT


def test_verify_theorem(tmp_path, capsys):
    out = tmp_path / "v.json"
    assert main(["verify-theorem", "--d", "-11", "--max-n", "5", "--json-out", str(out)]) == EXIT_PASS
    text = capsys.readouterr().out
    assert text.count("[PASS]") == 2
    assert json.loads(out.read_text())["status"] == "pass"
    assert main(["verify-theorem", "--d", "-2", "--max-n", "4", "--budget", "1"]) == EXIT_BUDGET
    assert main(["verify-theorem", "--d", "-2", "--max-n", "40"]) == EXIT_BAD_INPUT


def test_export(tmp_path):
    assert main(["export", "--d", "-7", "--dot", "--json", "--kmax", "3", "--out-dir", str(tmp_path)]) == EXIT_PASS
    dots = list(tmp_path.glob("*.dot"))
    assert len(dots) >= 8
    data = json.loads((tmp_path / "catalogue_d7.json").read_text())
    from cyclotomic_lgraphs.families import catalogue

    assert [LGraph.from_dict(e["graph"]) for e in data["entries"]] == [e.graph for e in catalogue(-7, 3)]
    assert (tmp_path / "export_d7.manifest.json").exists()
    assert main(["export", "--d", "-7", "--out-dir", str(tmp_path)]) == EXIT_BAD_INPUT


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "cyclotomic_lgraphs", "lnsets", "--d", "-2"], capture_output=True, text=True)
    assert r.returncode == 0 and "L3:" in r.stdout
