"""
Tests for the verification suites
"""

import pytest

import config
import property_suites
from property_suites import SuiteResult, run_all


def test_all_suites_pass_on_default_seed():
    results = run_all(cases=8, dim_max=4)
    failed = [r.summary() for r in results if not r.passed]
    assert not failed, failed


def test_zero_cases_pass_with_note():
    results = run_all(cases=0)
    assert all(r.passed and r.cases == 0 for r in results)
    assert all("no cases" in r.summary() for r in results)


def test_suites_are_deterministic():
    a = run_all(seed=99, cases=4, dim_max=3)
    b = run_all(seed=99, cases=4, dim_max=3)
    assert [r.worst_residual for r in a] == [r.worst_residual for r in b]


def test_sign_fault_is_detected(monkeypatch):
    monkeypatch.setattr(config, "INJECT_METRIC_SIGN_FAULT", True)
    result = property_suites.metric_tensor_suite(seed=1, cases=5, dim_max=4)
    assert not result.passed
    assert result.worst_residual > 1e-3


def test_s_z_grid_covers_positive_definite_points():
    result = property_suites.s_z_grid_suite(cases=1)
    assert result.passed
    assert 0 < result.cases <= 5 ** 4


def test_trace_identity_reaches_dimension_eight():
    result = property_suites.trace_identity_suite(seed=5, cases=20, dim_max=2)
    assert result.passed


def test_summary_marks_failure():
    r = SuiteResult("reconstruction", False, 1.0, 1e-10, 3)
    assert r.summary().startswith("❌ reconstruction")


def test_dim_max_validation():
    with pytest.raises(ValueError):
        run_all(cases=1, dim_max=1)


def test_run_all_covers_algebraic_and_dynamical_laws():
    names = {r.name for r in run_all(cases=1, dim_max=3)}
    for name in (
        "exponential group law",
        "square root commutes with P",
        "adjoint involution",
        "pseudo-adjoint antihomomorphism",
        "projection gauge invariance",
        "metric tensor degeneracy",
        "geodesic length",
        "propagator group law",
        "evolution commutes with the map",
        "path-length convergence",
        "gap scaling",
        "bound positivity",
    ):
        assert name in names


@pytest.mark.parametrize("suite", [
    property_suites.path_convergence_suite,
    property_suites.gap_scaling_suite,
    property_suites.mirror_square_suite,
    property_suites.metric_degeneracy_suite,
])
def test_targeted_suites_pass(suite):
    result = suite(seed=3, cases=4, dim_max=4)
    assert result.passed, result.summary()
    assert result.cases == 4
