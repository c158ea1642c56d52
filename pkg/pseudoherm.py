"""
Pseudo-Hermitian Framework
Metric operator construction, the physical inner product and the Hermitian-equivalence maps
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np
import scipy.linalg

import config
from linalg import EigenSystem, adjoint, eig, herm_sqrt, hermitian_residual
from utils import (
    ComplexSpectrum,
    MetricMismatch,
    NotHermitian,
    ZeroState,
    as_matrix,
    as_vector,
    check_same_dim,
    norm,
)

# ==================== Domain Types ====================

@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Diagonalizable matrix with a verified real spectrum and cached eigensystem"""
    matrix: np.ndarray
    eigensystem: EigenSystem
    spectrum_real_tol: float

    @classmethod
    def from_matrix(cls, M, spectrum_real_tol: Optional[float] = None) -> "Hamiltonian":
        tol = spectrum_real_tol if spectrum_real_tol is not None else config.SPECTRUM_REAL_TOL
        A = as_matrix(M)
        sys = eig(A)
        check_real_spectrum(sys.eigenvalues, tol)
        return cls(A, sys, tol)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def energies(self) -> np.ndarray:
        return self.eigensystem.eigenvalues.real.copy()

    @property
    def gap(self) -> float:
        """Spread E_max - E_min of the spectrum"""
        e = self.energies
        return float(e.max() - e.min())


@dataclass(frozen=True, eq=False)
class MetricOperator:
    """eta_+ with its cached Hermitian square root and inverse square root"""
    eta: np.ndarray
    eta_sqrt: np.ndarray
    eta_inv_sqrt: np.ndarray
    dim: int

    @classmethod
    def from_matrix(cls, eta, tol: Optional[float] = None) -> "MetricOperator":
        E = as_matrix(eta)
        S, S_inv = herm_sqrt(E, tol)
        return cls((E + E.conj().T) / 2, S, S_inv, E.shape[0])

    @classmethod
    def identity(cls, dim: int) -> "MetricOperator":
        I = np.eye(dim, dtype=np.complex128)
        return cls(I, I.copy(), I.copy(), dim)

    @cached_property
    def eta_inv(self) -> np.ndarray:
        return self.eta_inv_sqrt @ self.eta_inv_sqrt

    @property
    def smallest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.eta)[0])

    def is_identity(self, tol: float = 1e-14) -> bool:
        return norm(self.eta - np.eye(self.dim)) <= tol * np.sqrt(self.dim)

    def same_as(self, other: "MetricOperator", rtol: float = 1e-12) -> bool:
        if self is other:
            return True
        return self.dim == other.dim and norm(self.eta - other.eta) <= rtol * norm(self.eta)


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray
    metric: MetricOperator

    @classmethod
    def checked(cls, A, metric: MetricOperator, tol: Optional[float] = None) -> "Observable":
        if not is_observable(A, metric, tol):
            raise MetricMismatch("operator is not pseudo-Hermitian with respect to the metric")
        return cls(as_matrix(A), metric)


def check_real_spectrum(eigenvalues: np.ndarray, tol: float):
    for E in eigenvalues:
        if abs(E.imag) >= tol * (1.0 + abs(E.real)):
            raise ComplexSpectrum(E)


def as_hamiltonian(H: Union[Hamiltonian, np.ndarray]) -> Hamiltonian:
    return H if isinstance(H, Hamiltonian) else Hamiltonian.from_matrix(H)


# ==================== Metric Construction ====================

def build_metric_operator(H: Union[Hamiltonian, np.ndarray]) -> MetricOperator:
    """
    Canonical eta_+ = sum_n |phi_n><phi_n| over the left eigenvectors that are
    biorthonormal to the unit-norm right eigenvectors
    """
    H = as_hamiltonian(H)
    check_real_spectrum(H.eigensystem.eigenvalues, H.spectrum_real_tol)

    W = H.eigensystem.left_vectors
    eta = W @ W.conj().T
    metric = MetricOperator.from_matrix((eta + eta.conj().T) / 2)

    res = pseudo_hermiticity_residual(H, metric)
    if res > config.PSEUDO_HERMITICITY_TOL:
        raise MetricMismatch(f"constructed metric violates pseudo-Hermiticity (residual {res:.3e})", res)
    return metric


def pseudo_hermiticity_residual(H: Union[Hamiltonian, np.ndarray], metric: MetricOperator) -> float:
    """|H† eta - eta H| / (|H| |eta|)"""
    A = H.matrix if isinstance(H, Hamiltonian) else as_matrix(H)
    check_same_dim(A, metric.dim, "Hamiltonian")
    scale = norm(A) * norm(metric.eta)
    diff = norm(A.conj().T @ metric.eta - metric.eta @ A)
    return diff / scale if scale > 0 else diff


def validate_pseudo_hermiticity(H, metric: MetricOperator, tol: Optional[float] = None) -> float:
    """User-supplied metric path: accept eta only when H is pseudo-Hermitian with respect to it"""
    tol = tol if tol is not None else config.PSEUDO_HERMITICITY_TOL
    res = pseudo_hermiticity_residual(H, metric)
    if res > tol:
        raise MetricMismatch(f"H is not pseudo-Hermitian with respect to the metric (residual {res:.3e})", res)
    return res


# ==================== Inner Product and Adjoints ====================

def physical_inner(psi, phi, metric: MetricOperator) -> complex:
    """<psi|eta phi>"""
    u = as_vector(psi, metric.dim)
    v = as_vector(phi, metric.dim)
    return complex(np.vdot(u, metric.eta @ v))


def physical_norm_sq(psi, metric: MetricOperator) -> float:
    return physical_inner(psi, psi, metric).real


def pseudo_adjoint(A, metric: MetricOperator) -> np.ndarray:
    """A# = eta^-1 A† eta"""
    M = as_matrix(A)
    check_same_dim(M, metric.dim)
    return metric.eta_inv @ adjoint(M) @ metric.eta


def is_observable(A, metric: MetricOperator, tol: Optional[float] = None) -> bool:
    tol = tol if tol is not None else config.DEFAULT_TOL
    M = as_matrix(A)
    return norm(pseudo_adjoint(M, metric) - M) < tol * (1.0 + norm(M))


# ==================== Hermitian Equivalence ====================

def hermitian_counterpart(H: Union[Hamiltonian, np.ndarray], metric: MetricOperator,
                          tol: Optional[float] = None) -> np.ndarray:
    """h = eta^1/2 H eta^-1/2"""
    H = as_hamiltonian(H)
    validate_pseudo_hermiticity(H, metric, tol)
    return metric.eta_sqrt @ H.matrix @ metric.eta_inv_sqrt


def hamiltonian_from_counterpart(h, metric: MetricOperator) -> Hamiltonian:
    """
    H = eta^-1/2 h eta^1/2, the pseudo-Hermitian image of a Hermitian h
    The eigensystem is carried over from h: psi_n ∝ eta^-1/2 q_n, phi_n ∝ eta^1/2 q_n
    """
    M = as_matrix(h)
    check_same_dim(M, metric.dim, "Hermitian Hamiltonian")
    res = hermitian_residual(M)
    if res > config.DEFAULT_TOL:
        raise NotHermitian(res)

    energies, Q = scipy.linalg.eigh((M + M.conj().T) / 2)
    V = metric.eta_inv_sqrt @ Q
    lengths = np.linalg.norm(V, axis=0)
    sys = EigenSystem(energies.astype(np.complex128), V / lengths, (metric.eta_sqrt @ Q) * lengths)
    return Hamiltonian(metric.eta_inv_sqrt @ M @ metric.eta_sqrt, sys, config.SPECTRUM_REAL_TOL)


def map_state(psi, metric: MetricOperator) -> np.ndarray:
    """psi' = eta^1/2 psi"""
    return metric.eta_sqrt @ as_vector(psi, metric.dim)


def map_observable(A, metric: MetricOperator) -> np.ndarray:
    """A' = eta^1/2 A eta^-1/2"""
    M = as_matrix(A)
    check_same_dim(M, metric.dim)
    return metric.eta_sqrt @ M @ metric.eta_inv_sqrt


def expectation(A, psi, metric: MetricOperator) -> complex:
    """<psi, A psi> / <psi, psi> in the physical inner product"""
    M = as_matrix(A)
    check_same_dim(M, metric.dim)
    v = as_vector(psi, metric.dim)
    nn = physical_norm_sq(v, metric)
    if not nn > 0:
        raise ZeroState()
    return physical_inner(v, M @ v, metric) / nn
