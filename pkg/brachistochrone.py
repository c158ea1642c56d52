"""
Quantum Brachistochrone with Fixed Boundary Data
Travel-time bound, optimal generator, travel-time measurement and Hamiltonian sweeps
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd
import scipy.linalg
from scipy.integrate import quad
from scipy.optimize import brentq

import config
from evolution import HamiltonianLike, orbit, resolve_hbar
from pseudoherm import (
    Hamiltonian,
    MetricOperator,
    as_hamiltonian,
    build_metric_operator,
    hamiltonian_from_counterpart,
    is_observable,
    map_state,
)
from statespace import (
    PhysicalState,
    TwoLevelMetricParams,
    antipodal_state,
    check_shared_metric,
    geodesic_distance,
    is_antipodal,
    project,
    two_level_route,
)
from utils import (
    CoincidentStates,
    DependentStates,
    InvalidMetricParams,
    MetricMismatch,
    NeverReaches,
    as_vector,
    make_rng,
    norm,
)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# Bloch axis of the great-circle rotation in the (u, w) plane
OPTIMAL_AXIS = np.array([0.0, 1.0, 0.0])

# ==================== Domain Types ====================

@dataclass(frozen=True, eq=False)
class BrachistochroneProblem:
    """Fixed initial and final rays, fixed metric and a fixed spectral gap"""
    initial: PhysicalState
    final: PhysicalState
    metric: MetricOperator
    gap: float
    hbar: float

    def __post_init__(self):
        if not (math.isfinite(self.gap) and self.gap > 0):
            raise ValueError(f"gap must be a positive number, got {self.gap}")
        resolve_hbar(self.hbar)
        if not (self.initial.metric.same_as(self.metric) and self.final.metric.same_as(self.metric)):
            raise MetricMismatch("boundary states are not defined with respect to the problem metric")

    @property
    def dim(self) -> int:
        return self.metric.dim


@dataclass(frozen=True, eq=False)
class BrachistochroneSolution:
    hamiltonian: Hamiltonian
    hermitian: np.ndarray
    travel_time: float
    bound: float
    achieves_bound: bool


@dataclass(frozen=True)
class _Plane:
    """Orthonormal u, w with psi_F' on the ray of cos(theta) u + sin(theta) w"""
    u: np.ndarray
    w: np.ndarray
    theta: float


def antipodal_problem(m: TwoLevelMetricParams, gap: float, hbar: Optional[float] = None) -> BrachistochroneProblem:
    """psi_I = (1, 0) and its eta-orthogonal partner psi_F = (beta, -a)"""
    psi_I = np.array([1.0, 0.0], dtype=np.complex128)
    return problem_from_vectors(psi_I, antipodal_state(psi_I, m), m.metric(), gap, hbar)


def problem_from_vectors(psi_I, psi_F, metric: MetricOperator, gap: float,
                         hbar: Optional[float] = None) -> BrachistochroneProblem:
    return BrachistochroneProblem(
        project(psi_I, metric), project(psi_F, metric), metric, float(gap), resolve_hbar(hbar)
    )


# ==================== Bound ====================

def min_time_bound(p: BrachistochroneProblem) -> float:
    """Geodesic distance over the maximal speed sqrt(2)·(gap/2)/hbar"""
    return geodesic_distance(p.initial, p.final) * math.sqrt(2.0) * p.hbar / p.gap


def chart_route_bound(p: BrachistochroneProblem) -> float:
    """
    Two-level bound obtained by integrating the chart line element along the
    pulled-back great circle instead of using the closed-form distance
    """
    if p.dim != 2:
        raise ValueError(f"chart route needs a two-level problem, got dimension {p.dim}")
    m = TwoLevelMetricParams.from_matrix(p.metric.eta)
    plane = _boundary_plane(p)
    S_inv = p.metric.eta_inv_sqrt

    def speed(s: float) -> float:
        z = S_inv @ (math.cos(s) * plane.u + math.sin(s) * plane.w)
        dz = S_inv @ (-math.sin(s) * plane.u + math.cos(s) * plane.w)
        return math.sqrt(max(two_level_route(z, dz, m), 0.0))

    length, _ = quad(speed, 0.0, plane.theta, epsabs=1e-13, epsrel=1e-12, limit=200)
    return length * math.sqrt(2.0) * p.hbar / p.gap


# ==================== Optimal Generator ====================

def _boundary_plane(p: BrachistochroneProblem) -> _Plane:
    u = map_state(p.initial.representative, p.metric)
    v = map_state(p.final.representative, p.metric)
    u, v = u / norm(u), v / norm(v)
    o = np.vdot(u, v)
    perp = v - o * u
    r = norm(perp)
    if r <= 1e-12:
        raise CoincidentStates("initial and final states lie on the same ray")
    phase = o / abs(o) if abs(o) > 0 else 1.0
    w = np.conj(phase) * perp / r
    return _Plane(u, w, math.atan2(r, abs(o)))


def _plane_generator(plane: _Plane, axis: np.ndarray, gap: float,
                     complement: Optional[np.ndarray] = None) -> np.ndarray:
    """h = (gap/2)(n·sigma) on span{u, w}, diag(complement) on its orthogonal complement"""
    B = np.column_stack([plane.u, plane.w])
    h2 = (gap / 2.0) * sum(n * s for n, s in zip(axis, PAULI))
    h = B @ h2 @ B.conj().T
    dim = len(plane.u)
    if dim > 2:
        energies = np.zeros(dim - 2) if complement is None else np.asarray(complement, dtype=float)
        C = scipy.linalg.null_space(B.conj().T)
        h = h + (C * energies) @ C.conj().T
    return (h + h.conj().T) / 2


def optimal_hamiltonian(p: BrachistochroneProblem) -> BrachistochroneSolution:
    """
    Rotate psi_I' along the great circle toward psi_F' with a Hermitian h of
    spectrum {-gap/2, gap/2} and pull h back to the physical picture
    """
    plane = _boundary_plane(p)
    h = _plane_generator(plane, OPTIMAL_AXIS, p.gap)
    H = hamiltonian_from_counterpart(h, p.metric)
    bound = min_time_bound(p)
    tau = travel_time(H, p.metric, p.initial, p.final, hbar=p.hbar)
    achieves = abs(tau - bound) < config.TRAVEL_TIME_TOL
    return BrachistochroneSolution(H, h, tau, bound, achieves)


# ==================== Travel Time ====================

def default_t_max(H: Hamiltonian, initial: PhysicalState, final: PhysicalState, hbar: float) -> float:
    """The larger of T_MAX_BOUND_FACTOR bounds and one period of the widest level pair"""
    if H.gap <= 0:
        raise NeverReaches("Hamiltonian is a multiple of the identity; every orbit is stationary")
    bound = geodesic_distance(initial, final) * math.sqrt(2.0) * hbar / H.gap
    return max(config.T_MAX_BOUND_FACTOR * bound, 2.0 * math.pi * hbar / H.gap)


def travel_time(H: HamiltonianLike, metric: MetricOperator, initial: PhysicalState, final: PhysicalState,
                t_max: Optional[float] = None, tol: Optional[float] = None,
                hbar: Optional[float] = None) -> float:
    """
    Smallest t in (0, t_max] at which Lambda(t) reaches the final ray

    The fidelity to the final ray is scanned on TRAVEL_TIME_GRID intervals in
    the mapped picture; every local maximum close enough to 1 is refined by a
    root search on the fidelity derivative and accepted once its geodesic
    distance to the target is below tol
    """
    H = as_hamiltonian(H)
    hbar = resolve_hbar(hbar)
    tol = tol if tol is not None else config.TRAVEL_TIME_TOL
    check_shared_metric(initial, final)
    if not initial.metric.same_as(metric):
        raise MetricMismatch("boundary states are not defined with respect to the given metric")
    t_max = float(t_max) if t_max is not None else default_t_max(H, initial, final, hbar)
    if not (math.isfinite(t_max) and t_max > 0):
        raise ValueError(f"t_max must be positive, got {t_max}")

    psi0 = initial.representative
    target = map_state(final.representative, metric)
    target = target / norm(target)
    S_T = metric.eta_sqrt.T

    def fidelity_profile(times: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        vectors, velocities = orbit(H, psi0, times, hbar)
        mapped = vectors @ S_T
        norms_sq = np.sum(np.abs(mapped) ** 2, axis=1)
        a = mapped @ target.conj()
        a_dot = (velocities @ S_T) @ target.conj()
        F = np.abs(a) ** 2 / norms_sq
        dF = 2.0 * np.real(a.conj() * a_dot) / norms_sq
        return F, dF, mapped

    def slope(t: float) -> float:
        return float(fidelity_profile(np.array([t]))[1][0])

    def distance_at(t: float) -> float:
        x = fidelity_profile(np.array([t]))[2][0]
        x = x / norm(x)
        o = np.vdot(x, target)
        aligned = (np.conj(o) / abs(o)) * target if abs(o) > 0 else target
        return math.sqrt(2.0) * 2.0 * math.atan2(norm(x - aligned), norm(x + aligned))

    grid = np.linspace(0.0, t_max, config.TRAVEL_TIME_GRID + 1)
    F, dF, _ = fidelity_profile(grid)
    step = grid[1] - grid[0]
    window = max(config.TRAVEL_TIME_PEAK_WINDOW, 2.0 * (H.gap * step / hbar) ** 2)

    peaks = np.flatnonzero((dF[:-1] > 0) & (dF[1:] <= 0) & (np.maximum(F[:-1], F[1:]) > 1.0 - window))
    for k in peaks:
        lo, hi = grid[k], grid[k + 1]
        if dF[k + 1] == 0.0:
            t = hi
        else:
            t = brentq(slope, lo, hi, xtol=config.TRAVEL_TIME_XTOL * hi, rtol=4 * np.finfo(float).eps)
        if t > 0 and distance_at(t) < tol:
            return float(t)

    # the interval is closed at t_max, where the scan sees no sign change of dF
    if F[-1] > 1.0 - window and distance_at(t_max) < tol:
        return float(t_max)

    raise NeverReaches(f"final ray is not reached within t_max = {t_max:.6g}")


# ==================== Sweeps ====================

@dataclass(frozen=True)
class SweepSample:
    index: int
    axis: Tuple[float, float, float]
    travel_time: float
    bound: float
    accepted: bool
    metric_params: Optional[Tuple[float, float, float, float]] = None


@dataclass(frozen=True)
class SweepReport:
    samples: int
    accepted: int
    rejected: int
    tau_min: float
    tau_mean: float
    tau_max: float
    hist_counts: np.ndarray
    hist_edges: np.ndarray
    violations: int
    bound: float
    bound_min: float
    bound_max: float
    records: Tuple[SweepSample, ...]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for r in self.records:
            row = {
                "index": r.index,
                "n_x": r.axis[0],
                "n_y": r.axis[1],
                "n_z": r.axis[2],
                "travel_time": r.travel_time,
                "bound": r.bound,
                "accepted": r.accepted,
            }
            if r.metric_params is not None:
                row.update(dict(zip(("a", "b1", "b2", "c"), r.metric_params)))
            rows.append(row)
        return pd.DataFrame(rows)


def _great_circle_axis(theta: float, rng: np.random.Generator) -> np.ndarray:
    """
    Uniform direction on the circle of rotation axes equidistant from the Bloch
    vectors (0, 0, 1) and (sin 2theta, 0, cos 2theta)
    """
    d = np.array([-math.sin(2 * theta), 0.0, 1.0 - math.cos(2 * theta)])
    d = d / np.linalg.norm(d)
    while True:
        n = rng.standard_normal(3)
        n = n - (n @ d) * d
        length = np.linalg.norm(n)
        if length > 1e-8:
            return n / length


def sample_connecting_hamiltonian(p: BrachistochroneProblem, rng: np.random.Generator,
                                  axis: Optional[np.ndarray] = None) -> Tuple[Hamiltonian, np.ndarray, np.ndarray]:
    """
    Random fixed-gap generator whose orbit passes through both boundary rays
    Returns (H, h, axis); levels outside the boundary plane stay inside [-gap/2, gap/2]
    """
    plane = _boundary_plane(p)
    if axis is None:
        axis = _great_circle_axis(plane.theta, rng)
    complement = rng.uniform(-p.gap / 2, p.gap / 2, size=max(p.dim - 2, 0))
    h = _plane_generator(plane, np.asarray(axis, dtype=float), p.gap, complement)
    return hamiltonian_from_counterpart(h, p.metric), h, np.asarray(axis, dtype=float)


def _sweep_sample(p: BrachistochroneProblem, index: int, seed: int,
                  vary_metric: bool, include_optimal: bool) -> SweepSample:
    rng = make_rng(seed, index)
    params = None
    problem = p
    if vary_metric:
        constraint = admissible_metric_constraint(p.initial.representative, p.final.representative)
        m = sample_admissible_metric(constraint, rng)
        params = (m.a, m.b1, m.b2, m.c)
        problem = problem_from_vectors(p.initial.representative, p.final.representative,
                                       m.metric(), p.gap, p.hbar)

    axis = OPTIMAL_AXIS if include_optimal and index == 0 else None
    H, _, axis = sample_connecting_hamiltonian(problem, rng, axis)
    bound = min_time_bound(problem)
    try:
        tau = travel_time(H, problem.metric, problem.initial, problem.final,
                          tol=config.SWEEP_ORBIT_TOL, hbar=problem.hbar)
    except NeverReaches:
        return SweepSample(index, tuple(axis), math.nan, bound, False, params)
    return SweepSample(index, tuple(axis), tau, bound, True, params)


def sweep_hamiltonians(p: BrachistochroneProblem, samples: Optional[int] = None, seed: Optional[int] = None,
                       vary_metric: bool = False, include_optimal: bool = True,
                       workers: int = 1) -> SweepReport:
    """
    Measure travel times for random fixed-gap generators connecting the boundary rays
    Sample i draws from its own stream (seed, i), so the report does not depend on workers
    """
    samples = samples if samples is not None else config.SWEEP_SAMPLES
    seed = seed if seed is not None else config.SWEEP_SEED
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    if vary_metric:
        if p.dim != 2:
            raise ValueError("metric variation is only available for two-level problems")
        if not is_antipodal(p.initial, p.final):
            raise ValueError("metric variation needs antipodal boundary states")

    def run(i: int) -> SweepSample:
        return _sweep_sample(p, i, seed, vary_metric, include_optimal)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, range(samples)))
    else:
        records = [run(i) for i in range(samples)]

    accepted = [r for r in records if r.accepted]
    taus = np.array([r.travel_time for r in accepted])
    bounds = np.array([r.bound for r in records])
    violations = sum(1 for r in accepted if r.travel_time < r.bound - config.SWEEP_VIOLATION_TOL)
    counts, edges = np.histogram(taus, bins=config.SWEEP_HIST_BINS)

    return SweepReport(
        samples=samples,
        accepted=len(accepted),
        rejected=samples - len(accepted),
        tau_min=float(taus.min()) if len(taus) else math.nan,
        tau_mean=float(taus.mean()) if len(taus) else math.nan,
        tau_max=float(taus.max()) if len(taus) else math.nan,
        hist_counts=counts,
        hist_edges=edges,
        violations=violations,
        bound=min_time_bound(p),
        bound_min=float(bounds.min()),
        bound_max=float(bounds.max()),
        records=tuple(records),
    )


# ==================== Two-Level Metric Admissibility ====================

@dataclass(frozen=True, eq=False)
class MetricConstraint:
    """
    Linear conditions on (a, b1, b2, c) making psi_F eta-orthogonal to psi_I;
    `equations` holds the real and imaginary parts of <psi_F|eta psi_I> = 0
    """
    psi_I: np.ndarray
    psi_F: np.ndarray
    equations: np.ndarray
    beta_over_a: Optional[complex]
    diagonal_required: bool

    def residual(self, params: TwoLevelMetricParams) -> float:
        x = np.array([params.a, params.b1, params.b2, params.c])
        return float(np.linalg.norm(self.equations @ x) / np.linalg.norm(x))

    def is_admissible(self, params: TwoLevelMetricParams, tol: Optional[float] = None) -> bool:
        tol = tol if tol is not None else config.DEFAULT_TOL
        return self.residual(params) < tol

    def describe(self) -> str:
        if self.diagonal_required:
            return "eta_+ must be diagonal (b1 = b2 = 0)"
        if self.beta_over_a is not None:
            r = self.beta_over_a
            return f"beta/a = {r.real:.12g}{r.imag:+.12g}i"
        e = self.equations
        return (
            f"{e[0, 0]:.6g} a + {e[0, 1]:.6g} b1 + {e[0, 2]:.6g} b2 + {e[0, 3]:.6g} c = 0 and "
            f"{e[1, 0]:.6g} a + {e[1, 1]:.6g} b1 + {e[1, 2]:.6g} b2 + {e[1, 3]:.6g} c = 0"
        )


def admissible_metric_constraint(psi_I, psi_F) -> MetricConstraint:
    i = as_vector(psi_I, 2)
    f = as_vector(psi_F, 2)
    if abs(i[0] * f[1] - i[1] * f[0]) <= 1e-12 * norm(i) * norm(f):
        raise DependentStates("initial and final vectors are linearly dependent")

    # <f|eta i> = k_a a + k_b1 b1 + k_b2 b2 + k_c c
    fc = f.conj()
    k = np.array([
        fc[0] * i[0],
        fc[0] * i[1] + fc[1] * i[0],
        1j * (fc[0] * i[1] - fc[1] * i[0]),
        fc[1] * i[1],
    ])
    equations = np.vstack([k.real, k.imag])

    ratio = None
    diagonal = False
    if abs(i[1]) <= 1e-12 * norm(i):
        ratio = complex(-f[0] / f[1])
        diagonal = abs(ratio) <= 1e-12
        if diagonal:
            ratio = 0j
    return MetricConstraint(i, f, equations, ratio, diagonal)


def sample_admissible_metric(constraint: MetricConstraint, rng: np.random.Generator,
                             draws: Optional[int] = None) -> TwoLevelMetricParams:
    """Random positive-definite metric from the null space of the admissibility equations"""
    draws = draws if draws is not None else config.ADMISSIBLE_METRIC_DRAWS
    basis = scipy.linalg.null_space(constraint.equations)
    for _ in range(draws):
        x = basis @ rng.standard_normal(basis.shape[1])
        if x[0] < 0:
            x = -x
        try:
            return TwoLevelMetricParams(*(float(v) for v in x))
        except InvalidMetricParams:
            continue
    raise InvalidMetricParams(f"no positive-definite admissible metric found in {draws} draws")


def s_z_observability_demo(m: TwoLevelMetricParams, hbar: Optional[float] = None,
                           tol: Optional[float] = None) -> bool:
    hbar = resolve_hbar(hbar)
    S_z = (hbar / 2.0) * PAULI[2]
    return is_observable(S_z, m.metric(), tol)


# ==================== PT-Symmetric Family ====================

@dataclass(frozen=True)
class PTDemoReport:
    energies: Tuple[float, float]
    gap: float
    distance: float
    bound: float
    travel_time: float
    hermitian_bound: float
    metric: np.ndarray

    @property
    def respects_bound(self) -> bool:
        return self.travel_time >= self.bound - config.SWEEP_VIOLATION_TOL


def pt_symmetric_hamiltonian(r: float, s: float, theta: float) -> Hamiltonian:
    """[[r e^{i theta}, s], [s, r e^{-i theta}]]; real spectrum when s^2 > r^2 sin^2 theta"""
    phase = complex(math.cos(theta), math.sin(theta))
    return Hamiltonian.from_matrix(np.array([[r * phase, s], [s, r * phase.conjugate()]]))


def pt_symmetric_demo(r: float, s: float, theta: float, hbar: Optional[float] = None) -> PTDemoReport:
    """
    Travel time from (1, 0) to the ray of (0, 1) under the PT-symmetric
    Hamiltonian, measured in the geometry of its own metric
    """
    hbar = resolve_hbar(hbar)
    H = pt_symmetric_hamiltonian(r, s, theta)
    metric = build_metric_operator(H)
    p = problem_from_vectors([1.0, 0.0], [0.0, 1.0], metric, H.gap, hbar)
    tau = travel_time(H, metric, p.initial, p.final, hbar=hbar)
    e = H.energies
    return PTDemoReport(
        energies=(float(e[0]), float(e[1])),
        gap=H.gap,
        distance=geodesic_distance(p.initial, p.final),
        bound=min_time_bound(p),
        travel_time=tau,
        hermitian_bound=math.pi * hbar / H.gap,
        metric=metric.eta,
    )
