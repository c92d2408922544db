import json
import math
import os
import pathlib

import pytest

import absred

DATA = pathlib.Path(os.environ.get("ABSRED_TEST_DATA", pathlib.Path(__file__).parent.parent / "data"))


def test_hat_two_qubits():
    h = absred.hat((2, 2), [0.7, 0.3])
    s = math.sqrt(0.21)
    assert h["sorted"] == pytest.approx([-s, 0.3, s, 0.7], abs=1e-12)
    assert h["pattern"][0] == 0.7


def test_check_spectrum():
    r = absred.check((2, 2), "ared", [0.4, 0.3, 0.2, 0.1])
    assert r["v"] == 1
    assert r["status"] == "In"
    assert absred.check((2, 2), "ared", [0.7, 0.1, 0.1, 0.1])["status"] == "Out"
    assert absred.check((3, 3), "ls:3", [1 / 9] * 9)["status"] == "In"


def test_check_matrix_from_file():
    m = json.loads((DATA / "rho32.json").read_text())
    rows = [[complex(a, b) for a, b in zip(ra, ia)] for ra, ia in zip(m["re"], m["im"])]
    red_b = absred.check_matrix((3, 2), "red:b", rows)
    assert red_b["status"] == "Out"
    assert red_b["certificate"]["lambda_min"] < -0.05
    assert absred.check_matrix((3, 2), "red:a", rows)["status"] == "In"


def test_pseudopure_and_lambda():
    r = absred.pseudopure((3, 3), [0.334, 0.333, 0.333], 0.8)
    assert r["ared"]["status"] == "In"
    assert r["appt"]["status"] == "Out"
    assert r["thresholds"]["appt"] == pytest.approx(9 / 11, abs=1e-12)
    assert absred.lambda_max((3, 3), "ared") == pytest.approx(1 / 3)


def test_witness_and_sampling():
    mu = 0.7
    spec = [mu / 9 + 1 - mu] + [mu / 9] * 8
    w = absred.witness((3, 3), spec, [1 / 3, 1 / 3, 1 / 3])
    assert w["lambda_min"] < 0
    assert w["pairing"] == pytest.approx(w["objective"], abs=1e-9)
    lo, idx = absred.mc_reduction_min((3, 3), [1 / 9] * 9, 10, seed=4)
    assert lo == pytest.approx(2 / 9, abs=1e-12)


def test_survey_summary():
    s = absred.survey((3, 2), 50, seed=2)
    assert s["count"] == 50
    assert s["violations"]["total"] == 0


def test_validation_errors_become_value_errors():
    with pytest.raises(ValueError):
        absred.check((2, 2), "ared", [0.5, 0.5])
    with pytest.raises(ValueError):
        absred.hat((2, 2), [0.4, 0.3, 0.3])
