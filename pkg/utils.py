"""
Shared Utilities for the Pseudo-Hermitian Quantum Toolkit
Error hierarchy, array coercion, norms and seeded random generators
"""

from typing import Optional, Tuple

import numpy as np
from scipy.stats import unitary_group

import config

# ==================== Errors ====================

class PseudoHermitianError(Exception):
    """Base class for every domain error raised by the toolkit"""


class NotDiagonalizable(PseudoHermitianError):
    def __init__(self, condition_number: float):
        self.condition_number = float(condition_number)
        super().__init__(
            f"eigenvector matrix condition number {self.condition_number:.3e} "
            f"exceeds {config.EIGVEC_COND_MAX:.0e}; matrix treated as defective"
        )


class NonConvergence(PseudoHermitianError):
    pass


class DegenerateSpectrum(PseudoHermitianError):
    pass


class NotHermitian(PseudoHermitianError):
    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(f"matrix is not Hermitian (relative residual {self.residual:.3e})")


class NotPositiveDefinite(PseudoHermitianError):
    def __init__(self, smallest_eigenvalue: float):
        self.smallest_eigenvalue = float(smallest_eigenvalue)
        super().__init__(f"matrix is not positive-definite (smallest eigenvalue {self.smallest_eigenvalue:.6e})")


class ComplexSpectrum(PseudoHermitianError):
    def __init__(self, eigenvalue: complex):
        self.eigenvalue = complex(eigenvalue)
        super().__init__(
            f"complex eigenvalue {self.eigenvalue.real:.12g}{self.eigenvalue.imag:+.12g}j; "
            "spectrum must be real"
        )


class MetricMismatch(PseudoHermitianError):
    def __init__(self, message: str, residual: Optional[float] = None):
        self.residual = residual
        super().__init__(message)


class DimensionMismatch(PseudoHermitianError, ValueError):
    pass


class ZeroState(PseudoHermitianError):
    def __init__(self, message: str = "state vector has zero physical norm"):
        super().__init__(message)


class CoincidentStates(PseudoHermitianError):
    pass


class NeverReaches(PseudoHermitianError):
    pass


class DependentStates(PseudoHermitianError):
    pass


class InvalidMetricParams(PseudoHermitianError, ValueError):
    pass


class OutsideChart(PseudoHermitianError, ValueError):
    pass


class MatrixFileError(ValueError):
    """Unreadable or malformed MatrixFile"""


# ==================== Array Coercion ====================

def as_matrix(M, square: bool = True) -> np.ndarray:
    """Coerce input to a finite 2-D complex128 array"""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array with shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def as_vector(psi, dim: Optional[int] = None) -> np.ndarray:
    """Coerce a vector or dim x 1 column to a 1-D complex128 array"""
    v = np.asarray(psi, dtype=np.complex128)
    if v.ndim == 2 and v.shape[1] == 1:
        v = v[:, 0]
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a column vector, got array with shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"vector has dimension {v.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def check_same_dim(A: np.ndarray, dim: int, what: str = "operator"):
    if A.shape != (dim, dim):
        raise DimensionMismatch(f"{what} has shape {A.shape}, expected ({dim}, {dim})")


# ==================== Norms and Residuals ====================

def norm(A) -> float:
    """Frobenius norm (2-norm for vectors); the norm used by every residual"""
    return float(np.linalg.norm(A))


def relative_residual(diff, scale) -> float:
    s = norm(scale)
    return norm(diff) / s if s > 0 else norm(diff)


# ==================== Random Generators ====================

def make_rng(seed, *counter) -> np.random.Generator:
    """Counter-based generator: the stream for (seed, i, ...) does not depend on evaluation order"""
    return np.random.default_rng([int(seed), *[int(c) for c in counter]])


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    return random_complex(rng, dim)


def random_positive_matrix(rng: np.random.Generator, dim: int, shift: float = 1.0) -> np.ndarray:
    """Random Hermitian positive-definite matrix A†A + shift·I"""
    A = random_complex(rng, (dim, dim)) / np.sqrt(dim)
    P = A.conj().T @ A + shift * np.eye(dim)
    return (P + P.conj().T) / 2


def random_spectrum(rng: np.random.Generator, dim: int, min_gap: float = 0.1) -> np.ndarray:
    """Sorted real energies with pairwise spacing of at least min_gap"""
    steps = min_gap + rng.random(dim)
    energies = np.cumsum(steps)
    return energies - energies.mean()


def random_hermitian(rng: np.random.Generator, energies: np.ndarray) -> np.ndarray:
    energies = np.asarray(energies, dtype=float)
    Q = unitary_group.rvs(len(energies), random_state=rng) if len(energies) > 1 else np.eye(1)
    h = Q @ np.diag(energies) @ Q.conj().T
    return (h + h.conj().T) / 2


def random_pseudo_hermitian(rng: np.random.Generator, dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Random diagonalizable non-Hermitian matrix with real spectrum
    Returns (H, eta) where eta is a positive metric satisfying H† eta = eta H
    """
    eta = random_positive_matrix(rng, dim)
    w, Q = np.linalg.eigh(eta)
    S = (Q * np.sqrt(w)) @ Q.conj().T
    S_inv = (Q / np.sqrt(w)) @ Q.conj().T
    h = random_hermitian(rng, random_spectrum(rng, dim))
    return S_inv @ h @ S, eta
