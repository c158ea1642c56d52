"""
Pseudo-Unitary Time Evolution
Propagators, evolving states, speeds and path lengths in the state-space metric
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid

import config
from linalg import expm_from_eigensystem, expm_scaled
from pseudoherm import Hamiltonian, MetricOperator, as_hamiltonian, physical_norm_sq
from statespace import PhysicalState, fidelity, isometry_map, line_element, project
from utils import ZeroState, as_vector, check_same_dim, norm

HamiltonianLike = Union[Hamiltonian, np.ndarray]

# ==================== Domain Types ====================

@dataclass(frozen=True, eq=False)
class Propagator:
    """U(t) = exp(-itH/hbar)"""
    matrix: np.ndarray
    time: float
    hamiltonian: Hamiltonian
    hbar: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled curve Lambda(t) with its speeds and accumulated arc length"""
    times: np.ndarray
    states: Tuple[PhysicalState, ...]
    speeds: np.ndarray
    arc_lengths: np.ndarray
    path_length: float
    vectors: np.ndarray
    velocities: np.ndarray
    metric: MetricOperator
    hbar: float

    def fidelity_to_final(self) -> np.ndarray:
        final = self.states[-1]
        return np.array([fidelity(s, final) for s in self.states])


def resolve_hbar(hbar: Optional[float]) -> float:
    hbar = hbar if hbar is not None else config.HBAR
    if not (math.isfinite(hbar) and hbar > 0):
        raise ValueError(f"hbar must be a positive number, got {hbar}")
    return float(hbar)


def _exponential(H: Hamiltonian, c: complex) -> np.ndarray:
    # the real energies keep U exactly pseudo-unitary when the eigenbasis is usable
    if H.eigensystem.condition_number <= config.EXPM_EIG_COND_MAX:
        return expm_from_eigensystem(H.eigensystem, c, H.energies)
    return expm_scaled(H.matrix, c, H.eigensystem)


# ==================== Propagators ====================

def propagator(H: HamiltonianLike, t: float, hbar: Optional[float] = None) -> Propagator:
    H = as_hamiltonian(H)
    hbar = resolve_hbar(hbar)
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    if t == 0.0:
        U = np.eye(H.dim, dtype=np.complex128)
    else:
        U = _exponential(H, -1j * t / hbar)
    return Propagator(U, t, H, hbar)


def check_pseudo_unitarity(U: Propagator, metric: MetricOperator) -> float:
    """|eta^-1 U† eta U - I|; the caller decides what residual is acceptable"""
    M = U.matrix if isinstance(U, Propagator) else np.asarray(U, dtype=np.complex128)
    check_same_dim(M, metric.dim, "propagator")
    return norm(metric.eta_inv @ M.conj().T @ metric.eta @ M - np.eye(metric.dim))


def evolve_state(H: HamiltonianLike, psi0, t: float, hbar: Optional[float] = None) -> np.ndarray:
    H = as_hamiltonian(H)
    v = as_vector(psi0, H.dim)
    if not norm(v) > 0:
        raise ZeroState("initial state vector is zero")
    return propagator(H, t, hbar).matrix @ v


def evolve_projection(H: HamiltonianLike, s: PhysicalState, t: float,
                      hbar: Optional[float] = None) -> PhysicalState:
    """Lambda(t) = U(t) Lambda U(t)^-1"""
    H = as_hamiltonian(H)
    check_same_dim(s.lam, H.dim, "state projection")
    U = propagator(H, t, hbar).matrix
    U_inv = propagator(H, -t, hbar).matrix
    return PhysicalState(U @ s.lam @ U_inv, s.metric)


# ==================== Speeds and Path Lengths ====================

def instantaneous_speed(H: HamiltonianLike, metric: MetricOperator, psi,
                        hbar: Optional[float] = None) -> float:
    """ds/dt for dpsi = -(i/hbar) H psi dt"""
    H = as_hamiltonian(H)
    hbar = resolve_hbar(hbar)
    v = as_vector(psi, H.dim)
    return math.sqrt(line_element(v, (-1j / hbar) * (H.matrix @ v), metric))


def default_steps(H: HamiltonianLike, t_final: float, hbar: Optional[float] = None) -> int:
    """STEPS_PER_HALF_PERIOD grid intervals per pi*hbar/gap of evolution time"""
    H = as_hamiltonian(H)
    hbar = resolve_hbar(hbar)
    half_periods = t_final * H.gap / (math.pi * hbar)
    return max(config.MIN_STEPS, int(math.ceil(config.STEPS_PER_HALF_PERIOD * half_periods)))


def orbit(H: Hamiltonian, psi0, times: np.ndarray, hbar: float) -> Tuple[np.ndarray, np.ndarray]:
    """State vectors psi(t_k) (rows) and their time derivatives"""
    v = as_vector(psi0, H.dim)
    sys = H.eigensystem
    if sys.condition_number <= config.EXPM_EIG_COND_MAX:
        coeffs = sys.left_vectors.conj().T @ v
        phases = np.exp(np.outer(times, -1j * H.energies / hbar))
        vectors = (phases * coeffs) @ sys.right_vectors.T
    else:
        vectors = np.array([propagator(H, t, hbar).matrix @ v for t in times])
    velocities = (-1j / hbar) * vectors @ H.matrix.T
    return vectors, velocities


def _speeds(vectors: np.ndarray, velocities: np.ndarray, metric: MetricOperator) -> np.ndarray:
    return np.array([math.sqrt(line_element(x, dx, metric)) for x, dx in zip(vectors, velocities)])


def path_length(H: HamiltonianLike, metric: MetricOperator, psi0, t_final: float,
                steps: Optional[int] = None, hbar: Optional[float] = None) -> Trajectory:
    """
    Sample the evolving state on a uniform grid and integrate its speed with
    the trapezoidal rule; every grid point uses the exact exponential
    """
    H = as_hamiltonian(H)
    hbar = resolve_hbar(hbar)
    if not t_final > 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    steps = steps if steps is not None else default_steps(H, t_final, hbar)
    if steps < config.MIN_STEPS:
        raise ValueError(f"steps must be at least {config.MIN_STEPS}, got {steps}")

    v = as_vector(psi0, H.dim)
    if not physical_norm_sq(v, metric) > 0:
        raise ZeroState("initial state vector is zero")

    times = np.linspace(0.0, float(t_final), steps + 1)
    vectors, velocities = orbit(H, v, times, hbar)
    speeds = _speeds(vectors, velocities, metric)
    arc = cumulative_trapezoid(speeds, times, initial=0.0)
    states = tuple(project(x, metric) for x in vectors)
    return Trajectory(times, states, speeds, arc, float(arc[-1]), vectors, velocities, metric, hbar)


def mirror_trajectory(traj: Trajectory) -> Trajectory:
    """
    Image of a trajectory in the conventional projective space: states go
    through f(Lambda), speeds are recomputed there with the identity metric
    """
    m = traj.metric
    identity = MetricOperator.identity(m.dim)
    S_T = m.eta_sqrt.T
    vectors = traj.vectors @ S_T
    velocities = traj.velocities @ S_T
    states = tuple(PhysicalState(isometry_map(s), identity) for s in traj.states)
    speeds = _speeds(vectors, velocities, identity)
    arc = cumulative_trapezoid(speeds, traj.times, initial=0.0)
    return Trajectory(traj.times.copy(), states, speeds, arc, float(arc[-1]),
                      vectors, velocities, identity, traj.hbar)
