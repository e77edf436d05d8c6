import io
import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from expspline.cli import EXIT_NOT_ADMISSIBLE, EXIT_OK, EXIT_USAGE, main
from expspline.output import read_csv_curve
from oracles import bspline_closed_form_a1_sigma2


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_admissible_reference_order():
    code, out, _ = run("admissible", "--a", "2", "--sigma", "2.449489743")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["lhs_condition2"] == pytest.approx(1.01281, abs=1e-5)
    assert rep["admissible"] is True


def test_admissible_preset_matches_literal():
    _, a, _ = run("admissible", "--a", "2", "--sigma-preset", "sqrt6")
    assert json.loads(a)["params"]["sigma"] == math.sqrt(6.0)


def test_admissible_phase_crossing():
    # the decimal 4.68126 sits 6.5e-6 rad from pi, outside the default tolerance
    code, out, _ = run("admissible", "--a", "2", "--sigma", "4.68126", "--tolerance", "1e-5")
    assert code == EXIT_NOT_ADMISSIBLE
    assert json.loads(out)["condition2_holds"] is False
    code, _, _ = run("admissible", "--a", "2", "--sigma", "4.6812665")
    assert code == EXIT_NOT_ADMISSIBLE


@pytest.mark.parametrize(
    "argv",
    [
        ("admissible", "--a", "-1", "--sigma", "3"),
        ("admissible", "--a", "2", "--sigma", "1"),
        ("admissible", "--a", "2", "--sigma", "nan"),
        ("admissible", "--a", "2", "--sigma", "sqrt(6)"),
        ("admissible", "--a", "2"),
        ("admissible", "--a", "2", "--sigma", "3", "--sigma-preset", "sqrt6"),
        ("eval", "--what", "L", "--a", "2", "--sigma", "3", "--from", "1", "--to", "0", "--n", "5"),
        ("bogus",),
        (),
    ],
)
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err.strip()


def test_eval_bspline_closed_form():
    code, out, _ = run("eval", "--what", "bspline", "--a", "1", "--sigma", "2", "--from", "0", "--to", "2", "--n", "201")
    assert code == EXIT_OK
    header, data = read_csv_curve(out)
    assert header == ["x", "value"]
    assert np.abs(data[:, 1] - bspline_closed_form_a1_sigma2(data[:, 0])).max() <= 1e-14
    assert out.startswith("# expspline ")


def test_eval_L_curve():
    code, out, _ = run("eval", "--what", "L", "--a", "2", "--sigma", "2.449489743", "--from", "-6", "--to", "10", "--n", "801")
    assert code == EXIT_OK
    _, data = read_csv_curve(out)
    ints = np.abs(data[:, 0] - np.round(data[:, 0])) < 1e-12
    assert np.abs(data[ints, 1] - (np.round(data[ints, 0]) == 0)).max() <= 1e-6


def test_eval_h_complex_csv():
    code, out, _ = run("eval", "--what", "h", "--a", "2", "--sigma", "3", "--from", "-20", "--to", "20", "--n", "2001")
    assert code == EXIT_OK
    header, data = read_csv_curve(out)
    assert header == ["xi", "re", "im"] and data.shape == (2001, 3)


def test_eval_fourier_and_json():
    code, out, _ = run("eval", "--what", "L-fourier", "--a", "2", "--sigma-preset", "sqrt6",
                       "--from", "-1", "--to", "1", "--n", "3", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["values"][1] == pytest.approx(1.0, abs=2e-3)
    assert doc["meta"]["periods_K"] >= 64


def test_eval_fundamental_requires_admissibility(tmp_path):
    target = tmp_path / "L.csv"
    code, out, err = run("eval", "--what", "L", "--a", "2", "--sigma", "1.5", "--from", "0", "--to", "1",
                         "--n", "3", "--out", str(target))
    assert code == EXIT_NOT_ADMISSIBLE
    assert json.loads(out)["condition1_holds"] is False
    assert not target.exists()
    assert os.listdir(tmp_path) == []


def test_coeffs_table():
    code, out, _ = run("coeffs", "--a", "2", "--sigma", "2.449489743", "--window", "64")
    assert code == EXIT_OK
    header, data = read_csv_curve(out)
    assert header == ["k", "c_k"] and data.shape == (129, 2)
    k = data[:, 0].astype(int)
    dominant = k[np.argmax(np.abs(data[:, 1]))]
    assert dominant == -1
    assert "c_k" in out and "\n0," in out


def test_coeffs_not_admissible():
    code, _, _ = run("coeffs", "--a", "2", "--sigma", "1.5")
    assert code == EXIT_NOT_ADMISSIBLE


def test_reconstruct_case(tmp_path):
    d = {0: 2.0, 1: -3.0, -2: 0.5}
    case = {
        "params": {"a": 2, "sigma": math.sqrt(6.0)},
        "samples": [{"k": k, "value": d.get(k, 0.0)} for k in range(-10, 11)],
        "grid": {"from": -3, "to": 5, "n": 101},
    }
    path = tmp_path / "case.json"
    path.write_text(json.dumps(case))
    out_csv = tmp_path / "rec.csv"
    code, out, err = run("reconstruct", "--case", str(path), "--out", str(out_csv))
    assert code == EXIT_OK and out == ""
    line = next(ln for ln in err.splitlines() if ln.startswith("max_integer_error:"))
    assert float(line.split(":")[1]) <= 1e-6
    _, data = read_csv_curve(out_csv.read_text())
    assert data.shape == (101, 2)


def test_reconstruct_bad_case(tmp_path):
    path = tmp_path / "case.json"
    path.write_text("{not json")
    assert run("reconstruct", "--case", str(path))[0] == EXIT_USAGE
    assert run("reconstruct", "--case", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_outputs_are_byte_identical(tmp_path):
    args = ["eval", "--what", "h", "--a", "2", "--sigma", "3", "--from", "-5", "--to", "5", "--n", "101"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*args, "--out", str(a))[0] == EXIT_OK
    assert run(*args, "--out", str(b))[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_figures_command(tmp_path):
    code, out, _ = run("figures", "--outdir", str(tmp_path))
    assert code == EXIT_OK
    names = out.split()
    assert len(names) == 27 and sorted(os.listdir(tmp_path)) == names


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "expspline", "admissible", "--a", "-1", "--sigma", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_USAGE
    proc = subprocess.run([sys.executable, "-m", "expspline", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "expspline" in proc.stdout
