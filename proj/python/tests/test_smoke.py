import json
import os
import pathlib

import numpy as np
import pytest

import lrmoa


def test_examples_are_listed():
    assert set(lrmoa.example_names()) >= {"laf", "tr", "hankel", "lrr3"}
    tr = lrmoa.example("tr")
    assert tr.shape == (4, 4)
    assert tr.rank_bound == 3
    assert "X4" in tr.labels


def test_hankel_point_report():
    rep = lrmoa.analyze(lrmoa.example("hankel"), "Xbar")
    assert rep["schema"] == "lrmoa-analysis"
    assert rep["svd"]["singular_values"][:2] == pytest.approx([112.5, 0.5], abs=1e-9)
    assert rep["stationarity"]["is_F"]
    assert rep["qualification"]["intersection_rule_case"] == "eq_full_rank"
    assert rep["second_order"]["sufficient_ok"]


def test_trace_points():
    tr = lrmoa.example("tr")
    x1 = lrmoa.analyze(tr, "X1")["stationarity"]
    assert not x1["is_F"] and x1["is_M"]
    x4 = lrmoa.analyze(tr, tr.point("X4"), alpha=1.0)["stationarity"]
    assert x4["is_alpha"]
    assert x4["y"][0] == pytest.approx(-2 / 3, abs=1e-8)
    assert x4["beta"] == pytest.approx(2.0, abs=1e-8)
    assert "unique global minimizer" in x4["classification"]


def test_infinite_beta_is_none():
    rep = lrmoa.analyze(lrmoa.example("lrr3"), "Wbar")
    assert rep["stationarity"]["beta"] is None


def test_solve_recovers_trace_minimizer():
    tr = lrmoa.example("tr")
    x, rep = lrmoa.solve(tr, "H")
    assert rep["converged"]
    assert np.linalg.norm(x - tr.point("X4")) <= 1e-6


def test_projection_and_ties():
    z = np.diag([3.0, 2.0, 1.0])
    p, tie = lrmoa.project_low_rank(z, 2)
    assert np.allclose(p, np.diag([3.0, 2.0, 0.0]))
    assert not tie
    assert lrmoa.project_low_rank(np.eye(3), 2)[1]
    assert lrmoa.rank_estimate(p) == 2


def test_oracle_suite():
    res = lrmoa.oracle("projection", cases=20)
    assert res["passed"]
    assert res["cases"] >= 20


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        lrmoa.example("nope")
    with pytest.raises(ValueError):
        lrmoa.problem_from_json("{ not json")
    with pytest.raises(ValueError):
        lrmoa.analyze(lrmoa.example("tr"), np.zeros((3, 3)))


def test_round_trip_through_json():
    hk = lrmoa.example("hankel")
    back = lrmoa.problem_from_json(hk.to_json())
    assert back.name == "hankel"
    assert json.loads(hk.to_json())["l"] == 4


@pytest.mark.skipif(not os.environ.get("LRMOA_DATA"), reason="data directory not configured")
def test_exported_documents_load():
    data = pathlib.Path(os.environ["LRMOA_DATA"])
    files = sorted(data.glob("*.prob"))
    assert files
    for path in files:
        prob = lrmoa.load_problem(str(path))
        assert prob.num_constraints >= 1


def test_error_hierarchy():
    assert issubclass(lrmoa.ParseError, lrmoa.Error)
    assert issubclass(lrmoa.InputError, ValueError)
    with pytest.raises(lrmoa.InputError):
        lrmoa.example("nope")
    with pytest.raises(lrmoa.ShapeError):
        lrmoa.analyze(lrmoa.example("tr"), np.zeros((3, 3)))
