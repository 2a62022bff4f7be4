import json
import math

import numpy as np
import pytest

import qwass


def test_cost_matrices():
    assert np.array_equal(qwass.cost_z(2.0), np.diag([0, 4, 4, 0]).astype(complex))
    c = qwass.cost_symm(2.0)
    assert c.shape == (4, 4)
    assert np.allclose(c, c.conj().T)


def test_symmetric_distance():
    rho = qwass.state_from_bloch(0, 0, 0.5)
    omega = qwass.state_from_bloch(0, 0, -0.5)
    res = qwass.distance(rho, omega, qwass.cost_symm(2.0), 2.0)
    assert res["status"] == "optimal"
    assert abs(res["primal"] - 4.0) <= 1e-6
    assert res["gap"] <= 1e-6
    coupling = res["coupling"]
    assert abs(np.trace(coupling) - 1.0) <= 1e-8
    assert np.linalg.eigvalsh(coupling).min() >= -1e-8


def test_single_observable_xy():
    rho = qwass.state_from_bloch(0.5, 0, 0)
    omega = qwass.state_from_bloch(0, 0, 0)
    res = qwass.distance(rho, omega, qwass.cost_z(2.0), 2.0)
    assert abs(res["primal"] - (2 - math.sqrt(3))) <= 1e-6
    assert abs(qwass.d_z_xy(0.5, 0.0, 2.0) - (2 - math.sqrt(3))) <= 1e-12


def test_divergence():
    rho = qwass.state_from_bloch(0, 0, 0.5)
    omega = qwass.state_from_bloch(0, 0, -0.5)
    res = qwass.divergence(rho, omega, qwass.cost_symm(2.0))
    assert abs(res["squared"] - 2 * math.sqrt(3)) <= 1e-6
    assert qwass.divergence(rho, rho, qwass.cost_symm(2.0))["squared"] == pytest.approx(0.0, abs=1e-7)


def test_gap_demo():
    res = qwass.gap_demo(2.0)
    assert abs(res["nonlinear"] - 4.0) <= 1e-6
    assert abs(res["linearized"] - 4 * (1 - (math.sqrt(3) - 1) / 2)) <= 1e-6
    assert res["joint"] is None


def test_instance_text():
    record = json.loads(qwass.solve_instance("rho = [0, 0, 0.5]\nomega = [0, 0, -0.5]\n"))
    assert record["closed_form"]["formula"] == "symm-collinear"
    assert abs(record["primal"] - 4.0) <= 1e-6


def test_errors():
    with pytest.raises(qwass.ParseError):
        qwass.solve_instance("rho = [0, 0,\n")
    with pytest.raises(qwass.InvalidArgument):
        qwass.distance(np.eye(2), np.eye(2) / 2, qwass.cost_z(1.0), 1.0)
    with pytest.raises(qwass.InvalidArgument):
        qwass.verify("no-such-suite")
    assert issubclass(qwass.SolverError, qwass.Error)


def test_verify():
    assert "triangle-z" in qwass.verify_suites()
    res = qwass.verify("triangle-z", samples=500, seed=3)
    assert res["passed"] and res["cases"] == 500
