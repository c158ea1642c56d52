"""
Tests for the brachistochrone bound, the optimal generator, travel times and sweeps
"""

import math

import numpy as np
import pytest

from brachistochrone import (
    admissible_metric_constraint,
    antipodal_problem,
    chart_route_bound,
    default_t_max,
    min_time_bound,
    optimal_hamiltonian,
    problem_from_vectors,
    pt_symmetric_demo,
    pt_symmetric_hamiltonian,
    s_z_observability_demo,
    sample_admissible_metric,
    sample_connecting_hamiltonian,
    sweep_hamiltonians,
    travel_time,
)
from evolution import evolve_projection
from pseudoherm import Hamiltonian, MetricOperator
from statespace import PhysicalState, TwoLevelMetricParams, fidelity, is_antipodal, isometry_map, project
from utils import (
    CoincidentStates,
    ComplexSpectrum,
    DependentStates,
    NeverReaches,
    random_positive_matrix,
    random_state,
)

IDENTITY_PARAMS = TwoLevelMetricParams(1.0, 0.0, 0.0, 1.0)
SKEW_PARAMS = TwoLevelMetricParams(2.0, 1.0, 0.5, 1.5)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _random_problem(seed, dim, gap=1.0):
    rng = np.random.default_rng(seed)
    metric = MetricOperator.from_matrix(random_positive_matrix(rng, dim))
    return problem_from_vectors(random_state(rng, dim), random_state(rng, dim), metric, gap), rng


# ==================== Bound ====================

@pytest.mark.parametrize("params", [IDENTITY_PARAMS, SKEW_PARAMS])
def test_bound_for_antipodal_states(params):
    p = antipodal_problem(params, gap=1.0)
    assert min_time_bound(p) == pytest.approx(math.pi, abs=1e-12)


def test_bound_scales_with_gap_and_hbar():
    p = antipodal_problem(SKEW_PARAMS, gap=2.0, hbar=3.0)
    assert min_time_bound(p) == pytest.approx(3.0 * math.pi / 2.0, abs=1e-12)


def test_bound_for_coincident_states_is_zero():
    metric = SKEW_PARAMS.metric()
    p = problem_from_vectors([1.0, 1j], [2.0, 2j], metric, 1.0)
    assert min_time_bound(p) == pytest.approx(0.0, abs=1e-12)


def test_bound_for_intermediate_states():
    p = problem_from_vectors([1.0, 0.0], [1.0, 1.0], MetricOperator.identity(2), 1.0)
    assert min_time_bound(p) == pytest.approx(math.pi / 2, abs=1e-12)


def test_chart_route_bound_agrees_with_closed_form():
    p = antipodal_problem(SKEW_PARAMS, gap=1.0)
    assert chart_route_bound(p) == pytest.approx(min_time_bound(p), rel=1e-9)
    q, _ = _random_problem(3, 2, gap=1.7)
    assert chart_route_bound(q) == pytest.approx(min_time_bound(q), rel=1e-9)


# ==================== Optimal Generator ====================

@pytest.mark.parametrize("params", [IDENTITY_PARAMS, SKEW_PARAMS])
def test_optimal_hamiltonian_attains_bound(params):
    p = antipodal_problem(params, gap=1.0)
    solution = optimal_hamiltonian(p)
    assert solution.achieves_bound
    assert solution.travel_time == pytest.approx(math.pi, abs=1e-8)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(solution.hermitian)), [-0.5, 0.5], atol=1e-12)
    final = evolve_projection(solution.hamiltonian, p.initial, solution.travel_time)
    assert fidelity(final, p.final) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("seed,dim", [(1, 2), (2, 3), (3, 5)])
def test_optimal_hamiltonian_for_random_pairs(seed, dim):
    p, _ = _random_problem(seed, dim, gap=1.3)
    solution = optimal_hamiltonian(p)
    assert abs(solution.travel_time - min_time_bound(p)) < 1e-8
    final = evolve_projection(solution.hamiltonian, p.initial, solution.travel_time)
    assert fidelity(final, p.final) == pytest.approx(1.0, abs=1e-8)


def test_optimal_hamiltonian_rejects_coincident_states():
    p = problem_from_vectors([1.0, 0.0], [3.0, 0.0], MetricOperator.identity(2), 1.0)
    with pytest.raises(CoincidentStates):
        optimal_hamiltonian(p)


# ==================== Travel Time ====================

def test_travel_time_of_sigma_x_rotation():
    identity = MetricOperator.identity(2)
    tau = travel_time(SIGMA_X / 2, identity, project([1.0, 0.0], identity), project([0.0, 1.0], identity))
    assert tau == pytest.approx(math.pi, abs=1e-8)


def test_travel_time_from_eigenstate_never_reaches():
    identity = MetricOperator.identity(2)
    with pytest.raises(NeverReaches):
        travel_time(np.diag([1.0, 2.0]), identity, project([1.0, 0.0], identity), project([0.0, 1.0], identity))


def test_travel_time_respects_t_max():
    identity = MetricOperator.identity(2)
    with pytest.raises(NeverReaches):
        travel_time(SIGMA_X / 2, identity, project([1.0, 0.0], identity), project([0.0, 1.0], identity), t_max=3.0)


@pytest.mark.parametrize("t_max", [math.pi, 2 * math.pi])
def test_travel_time_includes_t_max(t_max):
    identity = MetricOperator.identity(2)
    H = SIGMA_X / 2 if t_max == math.pi else SIGMA_X / 4
    tau = travel_time(H, identity, project([1.0, 0.0], identity), project([0.0, 1.0], identity), t_max=t_max)
    assert tau == pytest.approx(t_max, abs=1e-8)


@pytest.mark.parametrize("seed,dim", [(4, 2), (5, 4), (6, 6)])
def test_travel_time_is_the_same_in_both_pictures(seed, dim):
    p, rng = _random_problem(seed, dim)
    H, h, _ = sample_connecting_hamiltonian(p, rng)
    tau = travel_time(H, p.metric, p.initial, p.final, tol=1e-6)
    identity = MetricOperator.identity(dim)
    initial = PhysicalState(isometry_map(p.initial), identity)
    final = PhysicalState(isometry_map(p.final), identity)
    assert tau == pytest.approx(travel_time(h, identity, initial, final, tol=1e-6), abs=1e-10)
    assert tau >= min_time_bound(p) - 1e-8


def test_travel_time_scales_inversely_with_gap():
    p, _ = _random_problem(8, 3, gap=1.0)
    q = problem_from_vectors(p.initial.representative, p.final.representative, p.metric, 2.0)
    H1, _, _ = sample_connecting_hamiltonian(p, np.random.default_rng(0))
    H2, _, _ = sample_connecting_hamiltonian(q, np.random.default_rng(0))
    tau1 = travel_time(H1, p.metric, p.initial, p.final, tol=1e-6)
    tau2 = travel_time(H2, q.metric, q.initial, q.final, tol=1e-6)
    assert tau2 == pytest.approx(tau1 / 2, abs=1e-10)
    assert min_time_bound(q) == pytest.approx(min_time_bound(p) / 2, abs=1e-12)


# ==================== Sweeps ====================

def test_sweep_over_antipodal_problem():
    p = antipodal_problem(SKEW_PARAMS, gap=1.0)
    report = sweep_hamiltonians(p, samples=500, seed=2007)
    assert report.violations == 0
    assert report.accepted == 500
    assert report.tau_min == pytest.approx(math.pi, abs=1e-6)
    assert report.hist_counts.sum() == report.accepted


def test_sweep_with_single_optimal_sample():
    p, _ = _random_problem(12, 3)
    report = sweep_hamiltonians(p, samples=1, seed=0)
    assert report.tau_min == pytest.approx(min_time_bound(p), abs=1e-8)


def test_sweep_over_random_problem_never_beats_bound():
    p, _ = _random_problem(13, 4, gap=0.8)
    report = sweep_hamiltonians(p, samples=60, seed=5)
    assert report.violations == 0
    assert report.tau_min >= report.bound - 1e-8
    assert report.tau_max > report.tau_min


def test_sweep_is_deterministic_and_worker_independent():
    p, _ = _random_problem(14, 2)
    a = sweep_hamiltonians(p, samples=20, seed=9)
    b = sweep_hamiltonians(p, samples=20, seed=9, workers=4)
    assert [r.travel_time for r in a.records] == [r.travel_time for r in b.records]
    assert a.to_frame().equals(b.to_frame())


def test_sweep_minimum_halves_when_gap_doubles():
    p1 = antipodal_problem(SKEW_PARAMS, gap=1.0)
    p2 = antipodal_problem(SKEW_PARAMS, gap=2.0)
    r1 = sweep_hamiltonians(p1, samples=20, seed=3)
    r2 = sweep_hamiltonians(p2, samples=20, seed=3)
    assert r2.tau_min == pytest.approx(r1.tau_min / 2, abs=1e-10)
    assert r2.bound == pytest.approx(r1.bound / 2, abs=1e-12)


def test_sweep_with_varying_metric():
    p = antipodal_problem(IDENTITY_PARAMS, gap=1.0)
    report = sweep_hamiltonians(p, samples=30, seed=11, vary_metric=True)
    assert report.violations == 0
    assert report.bound_min == pytest.approx(math.pi, abs=1e-10)
    assert report.bound_max == pytest.approx(math.pi, abs=1e-10)
    frame = report.to_frame()
    assert {"a", "b1", "b2", "c"} <= set(frame.columns)
    assert len(frame) == 30


def test_sweep_rejects_zero_samples():
    with pytest.raises(ValueError):
        sweep_hamiltonians(antipodal_problem(IDENTITY_PARAMS, 1.0), samples=0)


# ==================== Metric Admissibility ====================

def test_constraint_for_orthogonal_final_state_requires_diagonal_metric():
    c = admissible_metric_constraint([1.0, 0.0], [0.0, 1.0])
    assert c.diagonal_required
    assert "diagonal" in c.describe()
    assert c.is_admissible(TwoLevelMetricParams(2.0, 0.0, 0.0, 3.0))
    assert not c.is_admissible(SKEW_PARAMS)


def test_constraint_ratio():
    c = admissible_metric_constraint([1.0, 0.0], [1 + 1j, -2.0])
    assert c.beta_over_a == pytest.approx((1 + 1j) / 2)
    assert c.is_admissible(TwoLevelMetricParams(2.0, 1.0, 1.0, 2.0))


def test_constraint_rejects_dependent_states():
    with pytest.raises(DependentStates):
        admissible_metric_constraint([1.0, 1j], [2.0, 2j])


def test_sampled_admissible_metric_makes_states_antipodal():
    psi_I, psi_F = np.array([1.0, 0.5j]), np.array([0.3, -1.0 + 0.2j])
    c = admissible_metric_constraint(psi_I, psi_F)
    m = sample_admissible_metric(c, np.random.default_rng(17))
    assert c.is_admissible(m)
    metric = m.metric()
    assert is_antipodal(project(psi_I, metric), project(psi_F, metric))


@pytest.mark.parametrize(
    "params,expected",
    [
        (TwoLevelMetricParams(2.0, 0.0, 0.0, 3.0), True),
        (TwoLevelMetricParams(2.0, 1.0, 0.0, 3.0), False),
        (TwoLevelMetricParams(1.0, 0.0, 1e-14, 1.0), True),
    ],
)
def test_s_z_observability(params, expected):
    assert s_z_observability_demo(params) is expected


# ==================== PT-Symmetric Family ====================

def test_pt_family_at_zero_phase_is_hermitian_rotation():
    report = pt_symmetric_demo(1.0, 2.0, 0.0)
    assert report.gap == pytest.approx(4.0, abs=1e-12)
    assert report.travel_time == pytest.approx(math.pi / 4, abs=1e-8)
    assert report.bound == pytest.approx(math.pi / 4, abs=1e-12)


@pytest.mark.parametrize("r,s,theta", [(1.0, 2.0, 0.5), (1.0, 1.2, 1.0), (0.5, 1.0, 1.4)])
def test_pt_family_respects_bound(r, s, theta):
    report = pt_symmetric_demo(r, s, theta)
    assert report.respects_bound
    assert report.gap == pytest.approx(2 * math.sqrt(s ** 2 - (r * math.sin(theta)) ** 2), rel=1e-10)


def test_pt_family_broken_phase():
    with pytest.raises(ComplexSpectrum):
        pt_symmetric_hamiltonian(1.0, 0.1, math.pi / 2)


def test_default_t_max_covers_bound_and_period():
    identity = MetricOperator.identity(2)
    H = Hamiltonian.from_matrix(SIGMA_X / 2)
    initial = project([1.0, 0.0], identity)
    far = project([0.0, 1.0], identity)
    near = project([math.cos(0.1), math.sin(0.1)], identity)
    assert default_t_max(H, initial, far, 1.0) == pytest.approx(4 * math.pi)
    assert default_t_max(H, initial, near, 1.0) == pytest.approx(2 * math.pi)


def test_default_t_max_of_stationary_hamiltonian():
    identity = MetricOperator.identity(2)
    with pytest.raises(NeverReaches):
        default_t_max(Hamiltonian.from_matrix(np.eye(2)), project([1.0, 0.0], identity),
                      project([0.0, 1.0], identity), 1.0)
