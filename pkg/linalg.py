"""
Dense Complex Linear Algebra
Biorthonormal eigendecomposition, Hermitian square roots and matrix exponentials
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

import config
from utils import (
    DegenerateSpectrum,
    NonConvergence,
    NotDiagonalizable,
    NotHermitian,
    NotPositiveDefinite,
    as_matrix,
    norm,
    relative_residual,
)

# ==================== Eigen Systems ====================

@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues with right vectors psi_n and left vectors phi_n stored as columns"""
    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @cached_property
    def condition_number(self) -> float:
        return float(np.linalg.cond(self.right_vectors))

    def gram(self) -> np.ndarray:
        """<phi_m|psi_n>"""
        return self.left_vectors.conj().T @ self.right_vectors

    def biorthonormality_error(self) -> float:
        return norm(self.gram() - np.eye(self.dim))

    def reconstruct(self) -> np.ndarray:
        return (self.right_vectors * self.eigenvalues) @ self.left_vectors.conj().T

    def residuals(self, M) -> Tuple[float, float]:
        """Right and left eigen-equation residuals, relative to |M|"""
        A = as_matrix(M)
        V, W, w = self.right_vectors, self.left_vectors, self.eigenvalues
        right = relative_residual(A @ V - V * w, A)
        Wn = W / np.linalg.norm(W, axis=0)
        left = relative_residual(A.conj().T @ Wn - Wn * w.conj(), A)
        return right, left


def is_hermitian(M, tol: Optional[float] = None) -> bool:
    tol = tol if tol is not None else config.HERMITIAN_TOL
    return hermitian_residual(M) <= tol


def hermitian_residual(M) -> float:
    A = as_matrix(M)
    return relative_residual(A - A.conj().T, A)


def _eigenvalue_order(w: np.ndarray) -> np.ndarray:
    return np.lexsort((w.imag, w.real))


def eig(M, cond_max: Optional[float] = None, gap: Optional[float] = None) -> EigenSystem:
    """
    Eigendecomposition with biorthonormal left/right systems
    Eigenvalues come out sorted by (real, imag); right vectors have unit norm
    """
    A = as_matrix(M)
    cond_max = cond_max if cond_max is not None else config.EIGVEC_COND_MAX

    if is_hermitian(A):
        try:
            w, V = scipy.linalg.eigh((A + A.conj().T) / 2)
        except np.linalg.LinAlgError as e:
            raise NonConvergence(f"Hermitian eigensolver failed: {e}") from e
        w = w.astype(np.complex128)
        order = _eigenvalue_order(w)
        V = V[:, order]
        return EigenSystem(w[order], V, V.copy())

    try:
        w, vl, vr = scipy.linalg.eig(A, left=True, right=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NonConvergence(f"eigensolver failed: {e}") from e
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(vr)) and np.all(np.isfinite(vl))):
        raise NonConvergence("eigensolver returned non-finite values")

    order = _eigenvalue_order(w)
    w, vl, vr = w[order], vl[:, order], vr[:, order]
    vr = vr / np.linalg.norm(vr, axis=0)

    cond = np.linalg.cond(vr)
    if not np.isfinite(cond) or cond > cond_max:
        raise NotDiagonalizable(cond)

    return biorthonormalize(EigenSystem(w, vr, vl), gap=gap)


def degenerate_blocks(eigenvalues: np.ndarray, gap: Optional[float] = None) -> Tuple[int, np.ndarray]:
    """Group eigenvalues closer than gap·max|E| into connected clusters"""
    gap = gap if gap is not None else config.DEGENERACY_GAP
    w = np.asarray(eigenvalues)
    scale = float(np.max(np.abs(w))) if len(w) else 0.0
    scale = scale if scale > 0 else 1.0
    close = np.abs(w[:, None] - w[None, :]) <= gap * scale
    return connected_components(csr_matrix(close), directed=False)


def biorthonormalize(sys: EigenSystem, gap: Optional[float] = None) -> EigenSystem:
    """
    Rescale the left vectors so that <phi_m|psi_n> = delta_mn
    Degenerate clusters are normalized by inverting their block Gram matrix
    """
    V, W = sys.right_vectors, sys.left_vectors
    n_blocks, labels = degenerate_blocks(sys.eigenvalues, gap)

    W_new = np.array(W, dtype=np.complex128, copy=True)
    for b in range(n_blocks):
        idx = np.flatnonzero(labels == b)
        G = W[:, idx].conj().T @ V[:, idx]
        g_cond = np.linalg.cond(G)
        if not np.isfinite(g_cond) or g_cond > config.BLOCK_GRAM_COND_MAX:
            raise DegenerateSpectrum(
                f"left/right Gram block for eigenvalues {sys.eigenvalues[idx]} is singular "
                f"(condition number {g_cond:.3e})"
            )
        W_new[:, idx] = W[:, idx] @ np.linalg.inv(G).conj().T

    return EigenSystem(sys.eigenvalues, V, W_new)


# ==================== Matrix Functions ====================

def herm_sqrt(P, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Hermitian positive square root S of P and its inverse"""
    tol = tol if tol is not None else config.DEFAULT_TOL
    A = as_matrix(P)
    res = relative_residual(A - A.conj().T, A)
    if res > tol:
        raise NotHermitian(res)

    try:
        w, Q = scipy.linalg.eigh((A + A.conj().T) / 2)
    except np.linalg.LinAlgError as e:
        raise NonConvergence(f"Hermitian eigensolver failed: {e}") from e
    if w[0] <= 0:
        raise NotPositiveDefinite(w[0])

    root = np.sqrt(w)
    S = (Q * root) @ Q.conj().T
    S_inv = (Q / root) @ Q.conj().T
    return (S + S.conj().T) / 2, (S_inv + S_inv.conj().T) / 2


def expm_from_eigensystem(sys: EigenSystem, c: complex, eigenvalues: Optional[np.ndarray] = None) -> np.ndarray:
    """exp(c·M) = V exp(c·D) W† for a cached biorthonormal system of M"""
    w = sys.eigenvalues if eigenvalues is None else np.asarray(eigenvalues)
    return (sys.right_vectors * np.exp(complex(c) * w)) @ sys.left_vectors.conj().T


def expm_scaled(M, c: complex, eigensystem: Optional[EigenSystem] = None) -> np.ndarray:
    """
    exp(c·M) through the eigendecomposition when it is well conditioned,
    scaling-and-squaring otherwise
    """
    A = as_matrix(M)
    c = complex(c)
    n = A.shape[0]
    if c == 0:
        return np.eye(n, dtype=np.complex128)

    result = None
    try:
        sys = eigensystem if eigensystem is not None else eig(A)
        if sys.condition_number <= config.EXPM_EIG_COND_MAX:
            result = expm_from_eigensystem(sys, c)
        else:
            print(f"[Linalg] Eigenvector condition {sys.condition_number:.2e}; using scaling-and-squaring")
    except NotDiagonalizable as e:
        print(f"[Linalg] {e}; using scaling-and-squaring")

    if result is None:
        try:
            result = scipy.linalg.expm(c * A)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise NonConvergence(f"matrix exponential failed: {e}") from e

    if not np.all(np.isfinite(result)):
        raise NonConvergence("matrix exponential overflowed")
    return result


def adjoint(A) -> np.ndarray:
    """Conjugate transpose"""
    return as_matrix(A, square=False).conj().T
