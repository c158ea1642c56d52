"""
Tests for metric operators, the physical inner product and the Hermitian counterpart
"""

import numpy as np
import pytest

from pseudoherm import (
    Hamiltonian,
    MetricOperator,
    Observable,
    build_metric_operator,
    expectation,
    hamiltonian_from_counterpart,
    hermitian_counterpart,
    is_observable,
    map_observable,
    map_state,
    physical_inner,
    pseudo_adjoint,
    pseudo_hermiticity_residual,
    validate_pseudo_hermiticity,
)
from statespace import TwoLevelMetricParams
from utils import (
    ComplexSpectrum,
    MetricMismatch,
    NotDiagonalizable,
    ZeroState,
    random_hermitian,
    random_pseudo_hermitian,
    random_spectrum,
    random_state,
)


def test_hermitian_hamiltonian_has_identity_metric():
    h = np.array([[1.0, 0.5 - 0.2j], [0.5 + 0.2j, -0.3]])
    metric = build_metric_operator(h)
    np.testing.assert_allclose(metric.eta, np.eye(2), atol=1e-12)
    assert pseudo_hermiticity_residual(h, metric) < 1e-12


def test_metric_for_two_level_non_hermitian():
    H = np.array([[0, 1], [4, 0]], dtype=complex)
    metric = build_metric_operator(H)
    assert pseudo_hermiticity_residual(H, metric) < 1e-10
    assert metric.smallest_eigenvalue > 0
    h = hermitian_counterpart(H, metric)
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-2, 2], atol=1e-10)


def test_complex_spectrum_rejected():
    with pytest.raises(ComplexSpectrum) as info:
        Hamiltonian.from_matrix(np.array([[0, 1], [-4, 0]], dtype=complex))
    assert "complex eigenvalue" in str(info.value)
    assert abs(info.value.eigenvalue.imag) == pytest.approx(2.0)


def test_defective_matrix_rejected():
    with pytest.raises(NotDiagonalizable):
        build_metric_operator(np.array([[1, 1], [0, 1]], dtype=complex))


@pytest.mark.parametrize("seed", range(5))
def test_random_metric_and_counterpart(seed):
    rng = np.random.default_rng(seed)
    H, _ = random_pseudo_hermitian(rng, 4)
    H = Hamiltonian.from_matrix(H)
    metric = build_metric_operator(H)
    h = hermitian_counterpart(H, metric)
    assert np.linalg.norm(h - h.conj().T) / np.linalg.norm(h) < 1e-10
    np.testing.assert_allclose(np.linalg.eigvalsh((h + h.conj().T) / 2), H.energies, atol=1e-9)


def test_user_metric_is_validated():
    rng = np.random.default_rng(4)
    H, eta = random_pseudo_hermitian(rng, 3)
    metric = MetricOperator.from_matrix(eta)
    assert validate_pseudo_hermiticity(H, metric) < 1e-9
    with pytest.raises(MetricMismatch) as info:
        validate_pseudo_hermiticity(H, MetricOperator.identity(3))
    assert info.value.residual > 1e-9


def test_counterpart_round_trip():
    rng = np.random.default_rng(9)
    _, eta = random_pseudo_hermitian(rng, 3)
    metric = MetricOperator.from_matrix(eta)
    h = random_hermitian(rng, random_spectrum(rng, 3))
    H = hamiltonian_from_counterpart(h, metric)
    np.testing.assert_allclose(hermitian_counterpart(H, metric), h, atol=1e-12)


def test_physical_inner_is_eta_weighted():
    metric = TwoLevelMetricParams(2.0, 0.5, 0.0, 1.0).metric()
    psi = np.array([1.0, 0.0])
    phi = np.array([0.0, 1.0])
    assert physical_inner(psi, phi, metric) == pytest.approx(0.5)
    assert physical_inner(psi, psi, metric) == pytest.approx(2.0)


def test_pseudo_adjoint_of_observable_is_itself():
    rng = np.random.default_rng(1)
    _, eta = random_pseudo_hermitian(rng, 3)
    metric = MetricOperator.from_matrix(eta)
    a = random_hermitian(rng, random_spectrum(rng, 3))
    A = metric.eta_inv_sqrt @ a @ metric.eta_sqrt
    np.testing.assert_allclose(pseudo_adjoint(A, metric), A, atol=1e-12)
    assert is_observable(A, metric)
    assert Observable.checked(A, metric).metric is metric


def test_non_observable_rejected():
    metric = TwoLevelMetricParams(1.0, 1.0, 0.0, 2.0).metric()
    S_z = np.diag([0.5, -0.5])
    assert not is_observable(S_z, metric)
    with pytest.raises(MetricMismatch):
        Observable.checked(S_z, metric)


def test_expectation_matches_mapped_picture():
    rng = np.random.default_rng(21)
    _, eta = random_pseudo_hermitian(rng, 4)
    metric = MetricOperator.from_matrix(eta)
    a = random_hermitian(rng, random_spectrum(rng, 4))
    A = metric.eta_inv_sqrt @ a @ metric.eta_sqrt
    psi = random_state(rng, 4)
    value = expectation(A, psi, metric)
    v = map_state(psi, metric)
    expected = np.vdot(v, map_observable(A, metric) @ v) / np.vdot(v, v)
    assert abs(value.imag) < 1e-12
    assert value == pytest.approx(expected, abs=1e-12)


def test_expectation_of_zero_state():
    with pytest.raises(ZeroState):
        expectation(np.eye(2), np.zeros(2), MetricOperator.identity(2))


def test_metric_same_as():
    a = TwoLevelMetricParams(2.0, 1.0, 0.5, 1.5).metric()
    b = TwoLevelMetricParams(2.0, 1.0, 0.5, 1.5).metric()
    assert a.same_as(b)
    assert not a.same_as(MetricOperator.identity(2))
    assert MetricOperator.identity(3).is_identity()
