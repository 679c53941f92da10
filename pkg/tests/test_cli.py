import json
import subprocess
import sys

import numpy as np
import pytest

from hodgerank.cli import main
from hodgerank.complex import build_complex, from_text

FIVE_NODE_TEXT = "1 2 3\n2 4\n3 4 5\n3 5\n4 5\n3 4\n"
WORKED_REFERENCE = {
    "grad": [2.76, 1.24, -1.52, 1.28, 2.80, 1.90, -0.90],
    "curl": [0.33, -0.33, 0.33, 0, -1.00, 1.00, -1.00],
}


@pytest.fixture
def five_node_file(tmp_path):
    p = tmp_path / "five.txt"
    p.write_text(FIVE_NODE_TEXT)
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = text.strip().splitlines()
    head = lines[0].split(",")
    return [dict(zip(head, ln.split(","))) for ln in lines[1:]]


def test_build_summary_and_round_trip(capsys, five_node_file, tmp_path):
    code, out, _ = run(capsys, "build", five_node_file)
    assert code == 0
    assert out.splitlines()[0] == "nodes=5 edges=7 triangles=2 density=0.7"
    assert from_text(out) == build_complex([{1, 2, 3}, {2, 4}, {3, 4, 5}, {3, 5}, {4, 5}, {3, 4}])
    built = tmp_path / "built.txt"
    built.write_text(out)
    _, again, _ = run(capsys, "build", built, "--format", "complex")
    assert again == out


def test_build_single_edge_density(capsys, tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("4 9\n")
    assert run(capsys, "build", p)[1].splitlines()[0].endswith("density=1")


def test_build_json(capsys, five_node_file):
    doc = json.loads(run(capsys, "build", five_node_file, "--json")[1])
    assert (doc["nodes"], doc["edges"], doc["triangles"]) == (5, 7, 2)


def test_decompose_csv(capsys, five_node_file):
    code, out, _ = run(capsys, "decompose", five_node_file, "--flow", "3,1,-1,1,2,3,-2")
    assert code == 0
    rows = csv_rows(out)
    assert rows[-1]["u"] == "norm"
    for key, want in WORKED_REFERENCE.items():
        got = [float(r[key]) for r in rows[:-1]]
        assert np.abs(np.array(got) - want).max() <= 0.01


def test_decompose_flow_file_respects_orientation(capsys, five_node_file, tmp_path):
    flow = tmp_path / "flow.txt"
    flow.write_text("2 1 -3\n1 3 1\n2 3 -1\n2 4 1\n3 4 2\n3 5 3\n5 4 2\n")
    _, a, _ = run(capsys, "decompose", five_node_file, "--flow-file", flow)
    _, b, _ = run(capsys, "decompose", five_node_file, "--flow", "3,1,-1,1,2,3,-2")
    assert a == b


def test_epr_and_features(capsys, five_node_file, tmp_path):
    code, out, _ = run(capsys, "epr", five_node_file, "--threads", "2")
    assert code == 0
    rows = csv_rows(out)
    assert list(rows[0]) == ["u", "v", "total", "grad", "curl", "harm"]
    out_path = tmp_path / "f.csv"
    code, _, _ = run(capsys, "features", five_node_file, "--features", "epr,local", "--out", out_path)
    assert code == 0
    assert out_path.read_text().splitlines()[0] == "u,v,total,degree_sum,overlap,clustering_sum"


def test_bridges_on_barbell(capsys, tmp_path):
    p = tmp_path / "bar.txt"
    assert run(capsys, "synth", "barbell", "--out", p)[0] == 0
    rows = csv_rows(run(capsys, "bridges", p)[1])
    glob = [r for r in rows if r["label"] == "global"]
    assert len(glob) == 1 and glob[0]["tie_range"] == "-1"


def test_experiment_is_byte_deterministic(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    run(capsys, "synth", "tie-corpus", "--size", "6", "--seed", "3", "--out", corpus)
    args = ["experiment", corpus, "--seed", "42", "--features", "epr-components,embeddedness"]
    a = run(capsys, *args, "--threads", "1")[1]
    b = run(capsys, *args, "--threads", "4")[1]
    assert a == b
    doc = json.loads(a)
    assert len(doc["accuracies"]) == 5 and doc["spec"]["seed"] == 42
    assert set(doc["components"]) == {"grad", "curl", "harm"}


def test_bridge_experiment_and_curve(capsys, tmp_path):
    suite = tmp_path / "suite.txt"
    run(capsys, "synth", "bridge-suite", "--size", "20", "--out", suite)
    code, out, _ = run(capsys, "experiment", suite, "--task", "bridge-class", "--features", "epr-components")
    assert code == 0 and json.loads(out)["mean"] > 0.9
    corpus = tmp_path / "corpus.txt"
    run(capsys, "synth", "tie-corpus", "--size", "6", "--out", corpus)
    curve = tmp_path / "curve.csv"
    run(capsys, "experiment", corpus, "--curve", curve)
    assert curve.read_text().startswith("tie_range,count,mean_pred,mean_true\n2,")


def test_error_records(capsys, tmp_path, five_node_file):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n7\n")
    code, _, err = run(capsys, "build", bad)
    rec = json.loads(err)
    assert code == 3 and rec["error"] == "ParseError" and "line 2" in rec["message"]
    code, _, err = run(capsys, "epr", five_node_file, "--beta", "1.5")
    assert code == 4 and json.loads(err)["error"] == "ConfigError"
    code, _, err = run(capsys, "features", five_node_file, "--features", "dispersion")
    assert code == 1 and "dispersion" in json.loads(err)["message"]
    code, _, err = run(capsys, "build", tmp_path / "missing.txt")
    assert code == 1 and json.loads(err)["error"] == "FileNotFoundError"


def test_unknown_flag_rejected(five_node_file):
    with pytest.raises(SystemExit) as exc:
        main(["build", str(five_node_file), "--bogus"])
    assert exc.value.code != 0


def test_synth_random(capsys):
    code, out, _ = run(capsys, "synth", "random", "--size", "12", "-p", "0.4", "--seed", "5")
    assert code == 0 and out.strip()
    assert out == run(capsys, "synth", "random", "--size", "12", "-p", "0.4", "--seed", "5")[1]


def test_console_script_entry_point(five_node_file):
    proc = subprocess.run(
        [sys.executable, "-m", "hodgerank.cli", "build", str(five_node_file)], capture_output=True, text=True, check=True
    )
    assert proc.stdout.startswith("nodes=5 edges=7 triangles=2")
