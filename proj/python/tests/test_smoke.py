import math

import numpy as np
import pytest

import korteweg

CONFIG = """
[grid]
dim = 1
n = 64

[physics]
mu = 0.1
kappa = 0.01

[solver]
dt = 1e-3
t_end = 0.1

[initial]
preset = smooth_bump
amplitude = 0.1
"""


def test_capillary_force_vanishes_on_constants():
    (force,) = korteweg.div_k(np.full(64, 1.3), 0.01)
    assert force.shape == (64,)
    assert np.max(np.abs(force)) < 1e-14


def test_capillary_force_two_dimensional():
    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    rho = 1.0 + 0.1 * np.cos(x)[:, None] * np.cos(x)[None, :]
    fx, fy = korteweg.div_k(rho, 0.01)
    assert fx.shape == (32, 32) and fy.shape == (32, 32)


def test_blocks_reconstruct_field():
    x = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    f = 0.5 + np.cos(3 * x) + 0.2 * np.sin(17 * x)
    mean, blocks = korteweg.dyadic_blocks(f)
    assert mean == pytest.approx(0.5)
    assert np.max(np.abs(mean + sum(blocks.values()) - f)) < 1e-12
    assert korteweg.besov_norm(f, 0.5, 2.0, 1.0) > 0.0


def test_lifespan_unit_inputs():
    T, branch, branches = korteweg.lifespan_bound(1.0, 1.0, 1.0, 1.0)
    assert T == pytest.approx(1 / (32 * (1 + math.sqrt(2)) ** 2), rel=1e-12)
    assert branch == "critical_a0"
    assert set(branches) == {"surcritical_q", "surcritical_v", "c1_quarter", "critical_a0"}


def test_run_and_reports():
    code, summary = korteweg.run(CONFIG)
    assert code == 0
    assert summary["status"] == "completed"
    assert abs(summary["mass_drift_rel"]) < 1e-10
    assert korteweg.lifespan(CONFIG)["active_branch"] in {"c1_quarter", "critical_a0", "surcritical_q", "surcritical_v"}
    code, report = korteweg.picard(CONFIG, ["initial.amplitude=0.001", "picard.T=0.1"])
    assert code == 0 and report["converged"]


def test_verify_suite():
    assert "divk" in korteweg.suite_names()
    ok, cases = korteweg.verify("divk")
    assert ok and all(c["pass"] for c in cases)


def test_errors_are_translated():
    with pytest.raises(korteweg.ConfigError):
        korteweg.run(CONFIG, ["solver.dt=0.5"])
    with pytest.raises(korteweg.ConfigError):
        korteweg.verify("nope")
    with pytest.raises(korteweg.KortewegError):
        korteweg.div_k(np.ones(12), 0.01)
