import json
import subprocess
import sys

import numpy as np
import pytest

from levycalc.cli import main
from levycalc.documents import loads

GAUSS = {"shift": 0.0, "gauss_var": 9.0, "measure": {"type": "discrete", "atoms": []}}
POISSON = {"shift": 0.0, "gauss_var": 0.0,
           "measure": {"type": "discrete", "atoms": [{"x": 1.0, "mass": 1.0}]}}
STABLE = {"shift": 0.0, "gauss_var": 0.0,
          "measure": {"type": "stable_mixture", "atoms": [{"direction": 1, "z": 1.5, "weight": 2.0}]}}


@pytest.fixture
def doc(tmp_path):
    def write(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_transform_gaussian(capsys, doc):
    code, out, _ = run(capsys, "transform", "--in", doc(GAUSS), "--alpha", "2")
    assert code == 0
    assert out.startswith("# levycalc")
    assert loads(out)["gauss_var"] == pytest.approx(1.0)


def test_transform_alpha_zero_keeps_measure(capsys, doc):
    code, out, _ = run(capsys, "transform", "--in", doc(STABLE), "--alpha", "0", "--no-header")
    assert code == 0
    assert json.loads(out)["measure"] == STABLE["measure"]


def test_transform_i_map(capsys, doc):
    code, out, _ = run(capsys, "transform", "--in", doc(STABLE), "--i-map", "--no-header")
    assert json.loads(out)["measure"]["atoms"][0]["weight"] == pytest.approx(2.0 / 1.5)


def test_cf_all_methods(capsys, doc):
    code, out, _ = run(capsys, "cf", "--in", doc(POISSON), "--ymin", "-2", "--ymax", "2",
                       "--points", "5", "--method", "all", "--no-header")
    assert code == 0
    dev = float(out.strip().splitlines()[-1].split(":")[1])
    assert dev < 1e-6
    zero_rows = [l for l in out.splitlines() if l.split(",")[1:2] == ["0.0"]]
    assert all(l.endswith(",0.0,0.0") for l in zero_rows)


def test_cf_gaussian_row(capsys, doc):
    g = dict(GAUSS, gauss_var=1.0)
    code, out, _ = run(capsys, "cf", "--in", doc(g), "--ymin", "3", "--ymax", "3", "--points", "1",
                       "--no-header")
    row = out.strip().splitlines()[-1].split(",")
    assert float(row[2]) == pytest.approx(-1.5)


def test_classify_poisson(capsys, doc):
    code, out, _ = run(capsys, "classify", "--in", doc(POISSON), "--no-header")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 0 and rep["completely_s"] == "no"


def test_simulate(capsys, doc, tmp_path):
    code, out, err = run(capsys, "simulate", "--in", doc(POISSON), "--samples", "100",
                         "--seed", "4", "--no-header")
    assert code == 0
    vals = np.array([float(v) for v in out.split()])
    assert vals.size == 100
    assert "empirical_cf" in json.loads(err)
    binpath = tmp_path / "x.bin"
    run(capsys, "simulate", "--in", doc(POISSON), "--samples", "100", "--seed", "4",
        "--format", "bin", "--out", str(binpath))
    assert np.array_equal(np.fromfile(binpath, "<f8"), vals)


def test_simulate_zero_samples(capsys, doc):
    assert run(capsys, "simulate", "--in", doc(POISSON), "--samples", "0")[0] == 2


def test_exit_codes(capsys, doc, tmp_path):
    assert run(capsys, "transform", "--in", str(tmp_path / "missing"), "--alpha", "1")[0] == 2
    assert run(capsys, "transform", "--in", doc("{bad"), "--alpha", "1")[0] == 2
    assert run(capsys, "transform", "--in", doc({"shift": 0}), "--alpha", "1")[0] == 2
    bad = dict(GAUSS, gauss_var=-1.0)
    assert run(capsys, "transform", "--in", doc(bad), "--alpha", "1")[0] == 3
    assert run(capsys, "cf", "--in", doc(STABLE), "--method", "kernel")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["transform"])
    assert exc.value.code == 2


def test_verify_special(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "special")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2 and all(l.startswith("PASS") for l in lines)


def test_verify_failure_exit_code(capsys, monkeypatch):
    from levycalc import verification
    monkeypatch.setitem(verification.CRITERIA, 1, ("forced", lambda: (False, "forced")))
    code, out, err = run(capsys, "verify", "--suite", "special")
    assert code == 4
    assert "criterion 1" in err


def test_hyperbolic(capsys):
    code, out, _ = run(capsys, "hyperbolic", "--no-header")
    assert json.loads(out)["psi_s"]["verdict"] == "derived"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "levycalc", "--version"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "levycalc" in res.stdout
