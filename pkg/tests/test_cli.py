import csv
import io
import json

import numpy as np
import pytest

from suneuler.algebra import generate_basis
from suneuler.bloch import bell_density
from suneuler.cli import main
from suneuler.matrixio import matrix_to_obj, write_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bell(capsys):
    code, out, _ = run(capsys, "bell", "--k", "2")
    assert code == 0
    obj = json.loads(out)
    m = np.array([complex(*e) for e in obj["entries"]]).reshape(4, 4)
    assert m[0, 0] == 0.5 and m[0, 3] == -0.5 and m[3, 0] == -0.5 and m[3, 3] == 0.5


def test_volume_analytic(capsys):
    code, out, _ = run(capsys, "volume", "--analytic", "su4")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.1308996938995747, abs=1e-16)


def test_volume_chart_echoes_seed(capsys, monkeypatch):
    monkeypatch.setenv("SUNEULER_SEED", "5")
    code, out, _ = run(capsys, "volume", "--chart", "cp1", "--samples", "2000")
    meta = json.loads(out)["meta"]
    assert code == 0 and meta == {"seed": 5, "seed_source": "env SUNEULER_SEED"}
    code, out, _ = run(capsys, "volume", "--chart", "cp1", "--samples", "2000", "--seed", "8")
    assert json.loads(out)["meta"]["seed_source"] == "--seed"


def test_ppt_on_maximally_mixed(capsys, tmp_path):
    p = tmp_path / "mixed.json"
    write_matrix(p, np.eye(4) / 4)
    code, out, _ = run(capsys, "ppt", "--rho", str(p), "--da", "2", "--db", "2")
    assert code == 0
    assert json.loads(out)["entangled"] is False


def test_ppt_on_bell(capsys, tmp_path):
    p = tmp_path / "bell.json"
    write_matrix(p, bell_density(4))
    code, out, _ = run(capsys, "ppt", "--rho", str(p), "--da", "2", "--db", "2", "--subsystem", "A")
    obj = json.loads(out)
    assert obj["entangled"] is True and obj["negativity"] == pytest.approx(0.5)


def test_gellmann_json_and_csv(capsys):
    code, out, _ = run(capsys, "gellmann", "--n", "3")
    obj = json.loads(out)
    assert code == 0 and obj["count"] == 8
    m = np.array([complex(*e) for e in obj["matrices"][7]]).reshape(3, 3)
    np.testing.assert_allclose(m, generate_basis(3).generator(8), atol=0)
    code, out, _ = run(capsys, "gellmann", "--n", "2", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6 and rows[0].keys() == {"index", "row", "col", "re", "im"}


def test_decompose(capsys, tmp_path):
    p = tmp_path / "b1.json"
    write_matrix(p, bell_density(1))
    code, out, _ = run(capsys, "decompose", "--rho", str(p), "--n", "4")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["index", "n_i"] and len(rows) == 16
    assert float(rows[9][1]) == pytest.approx(np.sqrt(2 / 3))
    code, _, err = run(capsys, "decompose", "--rho", str(p), "--n", "3")
    assert code == 2 and "--n" in err


def test_compose_and_apply(capsys, tmp_path):
    angles = ",".join(["0"] * 5 + [str(np.pi / 4)] + ["0"] * 9)
    p = tmp_path / "e1.json"
    write_matrix(p, np.diag([1, 0, 0, 0]).astype(complex))
    code, out, _ = run(capsys, "compose", "--group", "su4", "--angles", angles, "--apply", str(p))
    m = np.array([complex(*e) for e in json.loads(out)["entries"]]).reshape(4, 4)
    assert code == 0
    np.testing.assert_allclose(m, bell_density(2).matrix, atol=1e-12)
    code, out, _ = run(capsys, "compose", "--group", "su6", "--angles", ",".join(["0.1"] * 24))
    assert code == 0 and json.loads(out)["n"] == 6
    code, _, _ = run(capsys, "compose", "--group", "su4", "--angles", "1,2")
    assert code == 2


def test_region_scan_csv(capsys, tmp_path):
    out_file = tmp_path / "scan.csv"
    code, _, err = run(capsys, "region-scan", "--samples", "50", "--seed", "3", "--out", str(out_file))
    rows = list(csv.DictReader(out_file.open()))
    assert code == 0 and len(rows) == 50 and "seed=3" in err
    for r in rows:
        if r["branch"]:
            assert float(r["purity"]) > 1 / 3


def test_symplex(capsys):
    code, out, _ = run(capsys, "symplex", "--group", "su4", "--s", "1", "--alpha-s", "6",
                       "--ranges", "0,1,0,1,0,1,0,1")
    obj = json.loads(out)
    assert code == 0 and obj["omega"] == 6.0 and obj["bound"] == pytest.approx(3 / 256)
    code, _, _ = run(capsys, "symplex", "--group", "su4", "--s", "1", "--alpha-s", "6", "--ranges", "0,1,0")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "bell", "--k", "9")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_io_errors(capsys, tmp_path):
    assert run(capsys, "ppt", "--rho", str(tmp_path / "none.json"), "--da", "2", "--db", "2")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "entries": [[1, 0]]}))
    assert run(capsys, "decompose", "--rho", str(bad))[0] == 3
    notstate = tmp_path / "neg.json"
    notstate.write_text(json.dumps(matrix_to_obj(np.diag([2.0, -1.0, 0, 0]))))
    assert run(capsys, "ppt", "--rho", str(notstate), "--da", "2", "--db", "2")[0] == 3
