"""
End-to-end recovery at the recommended parameters.

The quick variants run a handful of trials; the ``slow`` variants run 200 and
check the 95% upper confidence bound on the failure rate.
"""

import pytest

from harness.runner import run_experiment
from tests.factories import ExperimentConfigFactory

BUDGETS = {"eps2": 0.05, "eps3": 0.05, "eps4": 0.05, "R": None, "I": None}


def _run(tmp_path, trials, **overrides):
    config = ExperimentConfigFactory(output=tmp_path, trials=trials, seed=2024, **{**BUDGETS, **overrides})
    return run_experiment(config).summary


def test_nonadaptive_quick(tmp_path):
    summary = _run(tmp_path, 3, n=2000, d=40, l=2, u=4)
    assert summary["params"]["predicted_tests"] == 4_674_456
    assert summary["mean_tests"] == 4_674_456
    assert summary["recoveries"] >= 2


def test_classical_quick(tmp_path):
    summary = _run(tmp_path, 10, n=1000, d=10, l=0, u=1)
    assert summary["recoveries"] >= 9


def test_linear_small_instance_runs(tmp_path):
    summary = _run(tmp_path, 1, n=400, d=20, l=2, u=6, model="linear", algorithm="lin", eps3=0.1, eps4=0.1)
    assert summary["mean_tests"] == summary["predicted_tests"]


@pytest.mark.slow
def test_nonadaptive_acceptance(tmp_path):
    summary = _run(tmp_path, 200, n=2000, d=40, l=2, u=4)
    assert summary["confidence"]["failure_rate_upper"] <= 0.15


@pytest.mark.slow
def test_adaptive_acceptance(tmp_path):
    summary = _run(tmp_path, 200, n=2000, d=40, l=2, u=4, algorithm="ada")
    assert summary["confidence"]["failure_rate_upper"] <= 0.15


@pytest.mark.slow
def test_classical_acceptance(tmp_path):
    summary = _run(tmp_path, 200, n=1000, d=10, l=0, u=1)
    assert summary["recovery_rate"] >= 0.9


@pytest.mark.slow
def test_linear_acceptance(tmp_path):
    summary = _run(tmp_path, 200, n=2000, d=40, l=2, u=8, model="linear", algorithm="lin")
    assert summary["confidence"]["failure_rate_upper"] <= 0.15
