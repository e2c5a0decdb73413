import csv
import io
import json

import numpy as np
import pytest

from brandt import reference
from brandt.cli import JobSpec, ParameterError, main
from brandt.graphs import match_block_permutation


@pytest.fixture(autouse=True)
def cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("BRANDT_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


@pytest.mark.parametrize("argv", [
    ["verify", "--g", "2", "--ell", "2", "--disc", "6"],
    ["verify", "--g", "2", "--ell", "7", "--disc", "7"],
    ["verify", "--g", "2", "--ell", "4", "--disc", "7"],
    ["verify", "--g", "5", "--ell", "2", "--disc", "7"],
    ["verify", "--g", "2", "--ell", "2", "--disc", "18"],
    ["verify", "--g", "2", "--ell", "2", "--disc", "7", "--max-dim", "3"],
    ["spectra", "--g", "2", "--ell", "2", "--disc", "7", "--block", "1"],
    ["graph", "--g", "2", "--ell", "2", "--disc", "7", "--kind", "huge"],
    ["bogus"],
])
def test_invalid_parameters(argv, capsys):
    assert main(argv) == 2


def test_jobspec_validation():
    JobSpec(2, 2, 7).validate()
    with pytest.raises(ParameterError):
        JobSpec(2, 2, 35).validate()


def test_vertices_g1(capsys):
    assert main(["vertices", "--g", "1", "--ell", "2", "--disc", "11"]) == 0
    rows = [l.split("\t") for l in capsys.readouterr().out.strip().splitlines()[1:]]
    assert sum(1 for r in rows if r[1] == "0") == 2


def test_little_graph_csv(capsys):
    assert main(["graph", "--kind", "little", "--g", "3", "--ell", "2", "--disc", "3"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    M = np.array([[int(x) for x in r[1:]] for r in rows[1:]])
    assert M.shape == (5, 5)
    assert match_block_permutation(M, np.array(reference.LITTLE_3_2_3), [2, 3]) is not None


def test_graph_block_and_files(tmp_path):
    out = tmp_path / "o"
    assert main(["graph", "--kind", "enhanced", "--types", "1,0", "--g", "2", "--ell", "2", "--disc", "7",
                 "--out", str(out)]) == 0
    rows = list(csv.reader(open(out / "graph_enhanced.csv", newline="")))
    assert len(rows) == 1 + 4 and len(rows[0]) == 1 + 2
    assert all(sum(int(x) for x in r[1:]) == 3 for r in rows[1:])
    assert main(["graph", "--kind", "little", "--g", "2", "--ell", "2", "--disc", "7", "--out", str(out)]) == 0
    dot = (out / "graph_little.dot").read_text()
    assert dot.startswith("graph little {") and dot.count("half=true") == 5


def test_complex_json_and_cache(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["complex", "--g", "2", "--ell", "2", "--disc", "7", "--out", str(a)]) == 0
    assert main(["complex", "--g", "2", "--ell", "2", "--disc", "7", "--out", str(b)]) == 0
    assert main(["complex", "--g", "2", "--ell", "2", "--disc", "7", "--no-cache", "--out", str(tmp_path / "c")]) == 0
    data = [(p / "complex.json").read_bytes() for p in (a, b, tmp_path / "c")]
    assert data[0] == data[1] == data[2]
    js = json.loads(data[0])
    assert js["params"] == {"g": 2, "ell": 2, "disc": 7}
    assert len(js["vertices"]) == 8 and len(js["cells"]) == 8 + 23 + 16
    assert {"dim", "type", "vertices", "weight", "half"} <= set(js["cells"][0])
    assert all(isinstance(v["fingerprint"][1], str) and "/" in v["fingerprint"][1] for v in js["vertices"])
    assert sorted(map(tuple, js["involution"]))[0][0] == 0


def test_mass_command(tmp_path):
    assert main(["mass", "--g", "2", "--ell", "2", "--disc", "7", "--out", str(tmp_path)]) == 0
    js = json.loads((tmp_path / "mass.json").read_text())
    assert js["ok"] and {r["formula"] for r in js["rows"]} == {"5/96", "25/96", "25/32", "75/32"}


def test_mass_composite_is_skipped(tmp_path):
    assert main(["mass", "--g", "1", "--ell", "7", "--disc", "30", "--out", str(tmp_path)]) == 0
    js = json.loads((tmp_path / "mass.json").read_text())
    assert js["skipped"]


def test_spectra_command(tmp_path):
    assert main(["spectra", "--g", "2", "--ell", "2", "--disc", "7", "--out", str(tmp_path)]) == 0
    js = json.loads((tmp_path / "spectra.json").read_text())
    assert [b["r"] for b in js["blocks"]] == [0, 2]
    for b in js["blocks"]:
        assert b["report"]["k"] == 15 and b["report"]["char_poly"][0] == "1"


def test_verify_2_2_7(capsys):
    assert main(["verify", "--g", "2", "--ell", "2", "--disc", "7"]) == 0
    out = capsys.readouterr().out
    for name in ["class counts h_r", "cell census by type", "cell weights by type", "published masses",
                 "little complex census"]:
        assert f"PASS {name}" in out
    assert "FAIL" not in out
