import csv
import io
import json
import subprocess
import sys

import pytest

from coltri.bubble_catalog import best_pairing, closure
from coltri.cli import RunConfig, main
from coltri.enhancement import crossed_quartic_bubble, necklace_chain

from helpers import B1


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def b1_file(tmp_path):
    path = tmp_path / "b1.json"
    path.write_text(B1.to_json())
    return str(path)


def test_bubble_melonic_to_file(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, stdout, _ = run(["bubble", "melonic", "--d", "3", "--insert", "e0:1", "--out", str(out)], capsys)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text()) == json.loads(B1.to_json())


def test_graph_commands(tmp_path, capsys, b1_file):
    g = closure(B1, best_pairing(B1)[0])
    path = tmp_path / "g.json"
    path.write_text(g.to_json())
    code, out, _ = run(["graph", "degree", "--graph", str(path)], capsys)
    assert code == 0 and json.loads(out) == {"omega": 0, "F": 5, "E": 2, "b": 1}
    code, out, _ = run(["graph", "faces", "--graph", str(path), "--format", "human"], capsys)
    assert "F: 5" in out
    code, out, _ = run(["graph", "validate", "--graph", b1_file], capsys)
    assert json.loads(out)["kind"] == "bubble"
    code, out, _ = run(["graph", "key", "--graph", b1_file], capsys)
    assert len(json.loads(out)["key"]) == 16


def test_glue_enumerate_csv(capsys, b1_file):
    code, out, _ = run(["glue", "enumerate", "--bubble", b1_file, "--count", "2", "--mode", "rooted", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert max(int(r["F"]) for r in rows) == 7
    assert {"graph_key", "F_01", "omega", "delta", "count"} <= set(rows[0])


def test_enhance_commands(tmp_path, capsys, b1_file):
    path = tmp_path / "chain.json"
    path.write_text(necklace_chain(3).to_json())
    code, out, _ = run(["enhance", "inherited", "--graph", str(path), "--s-bubble", "4"], capsys)
    assert code == 0 and json.loads(out)["s"] == "5"
    d5 = tmp_path / "d5.json"
    d5.write_text(crossed_quartic_bubble(5, [1, 5]).to_json())
    code, out, _ = run(["enhance", "slice", "--bubble", str(d5), "--slices", "1,2,3:4,5"], capsys)
    assert json.loads(out)["s"] == "5"
    code, out, _ = run(["enhance", "pairing", "--bubble", str(d5), "--verify-bmax", "2"], capsys)
    assert json.loads(out)["status"] == "verified"
    code, out, _ = run(["enhance", "empirical", "--bubble", b1_file, "--b-max", "3"], capsys)
    assert json.loads(out)["s"] == "2"


def test_bubble_pairing_feeds_map(tmp_path, capsys, b1_file):
    code, out, _ = run(["bubble", "pairing", "--bubble", b1_file], capsys)
    data = json.loads(out)
    assert data["F_closure"] == 5
    bubble = tmp_path / "paired.json"
    bubble.write_text(out)
    g = tmp_path / "g.json"
    g.write_text(closure(B1, best_pairing(B1)[0]).to_json())
    code, out, _ = run(["map", "stuffed", "--graph", str(g), "--bubble", str(bubble)], capsys)
    data = json.loads(out)
    assert data["face_census"] == [1, 2, 2] and data["projected_is_tree"]


def test_gf_commands(capsys):
    code, out, _ = run(["gf", "series", "--k", "1", "--lambda", "0", "--order", "4"], capsys)
    assert json.loads(out)["coefficients"] == ["1", "2", "9", "54", "378"]
    code, out, _ = run(["gf", "critical", "--k", "1", "--lambda", "0"], capsys)
    data = json.loads(out)
    assert abs(data["t"] - 1 / 12) < 1e-15 and data["regime"] == "planar"
    assert data["t_exact_digits"].startswith("0.08333333333")
    code, out, _ = run(["gf", "exponent", "--k", "3", "--lambda", "0"], capsys)
    assert abs(json.loads(out)["extrapolated"] - 0.5) < 0.05
    code, out, _ = run(["gf", "phase-diagram", "--k-range", "1:2:2", "--lambda-range", "0", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["status"] for r in rows] == ["solved", "solved"]


def test_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = run(["graph", "faces", "--graph", str(bad)], capsys)
    assert code == 1 and json.loads(err)["error"] == "GraphError"
    code, _, err = run(["graph", "faces", "--graph", str(tmp_path / "missing.json")], capsys)
    assert code == 1 and "error" in json.loads(err)
    assert run(["gf", "series", "--k", "x", "--lambda", "0"], capsys)[0] == 2
    assert run(["nope"], capsys)[0] == 2
    code, _, err = run(["gf", "critical", "--k", "1", "--lambda", "0", "--digits", "10"], capsys)
    assert code == 1 and "30 digits" in json.loads(err)["message"]


def test_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("TENSOR_PRECISION_DIGITS", "12")
    code, _, _ = run(["gf", "critical", "--k", "1", "--lambda", "0"], capsys)
    assert code == 1


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(("graph", "faces"), edge_cap=0)
    with pytest.raises(ValueError):
        RunConfig(("graph", "faces"), fmt="xml")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coltri", "gf", "series", "--k", "1", "--lambda", "1", "--order", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficients"][:2] == ["1", "3"]
