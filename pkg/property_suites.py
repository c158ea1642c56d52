"""
Property Suites
Seeded randomized checks of every algebraic and geometric invariant of the toolkit;
driven by the `verify` command and by the test modules
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

import config
from brachistochrone import (
    min_time_bound,
    optimal_hamiltonian,
    problem_from_vectors,
    s_z_observability_demo,
    sample_connecting_hamiltonian,
    travel_time,
)
from evolution import check_pseudo_unitarity, evolve_state, mirror_trajectory, path_length, propagator
from linalg import adjoint, eig, expm_scaled, herm_sqrt, hermitian_residual
from pseudoherm import (
    Hamiltonian,
    MetricOperator,
    build_metric_operator,
    expectation,
    hamiltonian_from_counterpart,
    hermitian_counterpart,
    is_observable,
    map_observable,
    map_state,
    physical_inner,
    physical_norm_sq,
    pseudo_adjoint,
    pseudo_hermiticity_residual,
)
from statespace import (
    ChartPoint,
    PhysicalState,
    TwoLevelMetricParams,
    antipodal_state,
    curve_length,
    finite_difference_line_element,
    geodesic_distance,
    great_circle,
    isometry_map,
    line_element,
    metric_tensor,
    phys_trace,
    project,
    two_level_line_element,
)
from utils import (
    PseudoHermitianError,
    make_rng,
    norm,
    random_complex,
    random_hermitian,
    random_positive_matrix,
    random_pseudo_hermitian,
    random_spectrum,
    random_state,
    relative_residual,
)

TRACE_DIM_MAX = 8
CURVE_SAMPLES = 2001
PERIODS = 10
S_Z_DIAGONAL_VALUES = (0.5, 1.0, 2.0, 3.0, 5.0)
S_Z_COUPLING_VALUES = (-1.0, -0.5, 0.0, 0.5, 1.0)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst_residual: float
    threshold: float
    cases: int
    note: str = ""

    def summary(self) -> str:
        mark = "✅" if self.passed else "❌"
        if self.cases == 0:
            return f"{mark} {self.name}: no cases"
        line = f"{mark} {self.name}: worst residual {self.worst_residual:.3e} (threshold {self.threshold:.0e}, {self.cases} cases)"
        return f"{line} {self.note}" if self.note else line


def _run_cases(name: str, threshold: float, cases: int, seed: int, suite_id: int,
               case: Callable[[np.random.Generator, int], float]) -> SuiteResult:
    if cases <= 0:
        return SuiteResult(name, True, 0.0, threshold, 0, "no cases")
    worst = 0.0
    note = ""
    for k in range(cases):
        rng = make_rng(seed, suite_id, k)
        try:
            r = float(case(rng, k))
        except PseudoHermitianError as e:
            r = math.inf
            note = note or f"case {k}: {e}"
        worst = max(worst, math.inf if math.isnan(r) else r)
    return SuiteResult(name, worst <= threshold, worst, threshold, cases, note)


def _dim(rng: np.random.Generator, dim_max: int, dim_min: int = 2) -> int:
    return int(rng.integers(dim_min, max(dim_min, dim_max) + 1))


def _random_metric(rng: np.random.Generator, dim: int) -> MetricOperator:
    return MetricOperator.from_matrix(random_positive_matrix(rng, dim))


def _random_two_level_params(rng: np.random.Generator) -> TwoLevelMetricParams:
    return TwoLevelMetricParams.from_matrix(random_positive_matrix(rng, 2))


# ==================== Linear Algebra ====================

def reconstruction_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """V diag(E) W† = M and W†V = I for random diagonalizable real-spectrum matrices"""
    def case(rng, k):
        H, _ = random_pseudo_hermitian(rng, _dim(rng, dim_max))
        sys = eig(H)
        return max(relative_residual(sys.reconstruct() - H, H), sys.biorthonormality_error())
    return _run_cases("eigen reconstruction", 1e-10, cases, seed, 0, case)


def herm_sqrt_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    def case(rng, k):
        n = _dim(rng, dim_max)
        P = random_positive_matrix(rng, n)
        S, S_inv = herm_sqrt(P)
        return max(relative_residual(S @ S - P, P), norm(S @ S_inv - np.eye(n)), hermitian_residual(S))
    return _run_cases("hermitian square root", 1e-10, cases, seed, 1, case)


def sqrt_commutation_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    def case(rng, k):
        P = random_positive_matrix(rng, _dim(rng, dim_max))
        S, _ = herm_sqrt(P)
        return norm(S @ P - P @ S) / norm(P)
    return _run_cases("square root commutes with P", 1e-10, cases, seed, 16, case)


def expm_group_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """exp(c1 M) exp(c2 M) = exp((c1 + c2) M)"""
    def case(rng, k):
        M, _ = random_pseudo_hermitian(rng, _dim(rng, dim_max))
        c1, c2 = -1j * rng.uniform(-2.0, 2.0, size=2)
        joint = expm_scaled(M, c1 + c2)
        return relative_residual(expm_scaled(M, c1) @ expm_scaled(M, c2) - joint, joint)
    return _run_cases("exponential group law", 1e-10, cases, seed, 17, case)


def adjoint_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """(A†)† = A exactly, (AB)† = B†A† up to the summation order of the product"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        A, B = random_complex(rng, (n, n)), random_complex(rng, (n, n))
        product = adjoint(B) @ adjoint(A)
        return max(norm(adjoint(adjoint(A)) - A), relative_residual(adjoint(A @ B) - product, product))
    return _run_cases("adjoint involution", 1e-13, cases, seed, 18, case)


# ==================== Pseudo-Hermitian Framework ====================

def pseudo_hermiticity_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """Built metric satisfies H† eta = eta H and h is Hermitian with the spectrum of H"""
    def case(rng, k):
        H = Hamiltonian.from_matrix(random_pseudo_hermitian(rng, _dim(rng, dim_max))[0])
        m = build_metric_operator(H)
        h = hermitian_counterpart(H, m)
        E = H.energies
        spectrum = np.max(np.abs(np.linalg.eigvalsh((h + h.conj().T) / 2) - E)) / (1.0 + np.max(np.abs(E)))
        if not m.smallest_eigenvalue > 0:
            return math.inf
        return max(pseudo_hermiticity_residual(H, m), hermitian_residual(h), spectrum)
    return _run_cases("pseudo-hermiticity", config.PSEUDO_HERMITICITY_TOL, cases, seed, 2, case)


def pseudo_adjoint_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """(A#)# = A and (AB)# = B# A#"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        A, B = random_complex(rng, (n, n)), random_complex(rng, (n, n))
        product = pseudo_adjoint(B, m) @ pseudo_adjoint(A, m)
        return max(
            relative_residual(pseudo_adjoint(pseudo_adjoint(A, m), m) - A, A),
            relative_residual(pseudo_adjoint(A @ B, m) - product, product),
        )
    return _run_cases("pseudo-adjoint antihomomorphism", 1e-12, cases, seed, 19, case)


def expectation_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """Observable expectation values are real and agree with the mapped Hermitian picture"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        a = random_hermitian(rng, random_spectrum(rng, n))
        A = m.eta_inv_sqrt @ a @ m.eta_sqrt
        if not is_observable(A, m):
            return math.inf
        psi = random_state(rng, n)
        e1 = expectation(A, psi, m)
        v = map_state(psi, m)
        e2 = np.vdot(v, map_observable(A, m) @ v) / np.vdot(v, v)
        return max(abs(e1 - e2), abs(e1.imag)) / (1.0 + abs(e2))
    return _run_cases("expectation equivalence", 1e-10, cases, seed, 3, case)


# ==================== State Space ====================

def projection_algebra_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """Lambda^2 = Lambda, Lambda# = Lambda, Lambda psi = psi, Lambda phi = 0 for eta-orthogonal phi"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        psi = random_state(rng, n)
        chi = random_state(rng, n)
        phi = chi - (physical_inner(psi, chi, m) / physical_norm_sq(psi, m)) * psi
        L = project(psi, m).lam
        scale = max(1.0, norm(L))
        return max(
            norm(L @ L - L) / scale,
            norm(pseudo_adjoint(L, m) - L) / scale,
            norm(L @ psi - psi) / norm(psi),
            norm(L @ phi) / norm(phi),
        )
    return _run_cases("projection algebra", 1e-11, cases, seed, 4, case)


def gauge_invariance_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """project(c psi) = project(psi) entrywise for nonzero complex c"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        psi = random_state(rng, n)
        c = complex(*rng.standard_normal(2)) * 10.0 ** rng.uniform(-3.0, 3.0)
        L = project(psi, m).lam
        return np.max(np.abs(project(c * psi, m).lam - L)) / max(1.0, np.max(np.abs(L)))
    return _run_cases("projection gauge invariance", 1e-12, cases, seed, 20, case)


def explicit_projection_suite(cases: int) -> SuiteResult:
    """Closed-form projections for (a, beta) = (2, 1 + i)"""
    def case(rng, k):
        p = TwoLevelMetricParams(2.0, 1.0, 1.0, 2.0)
        m = p.metric()
        psi_I = np.array([1.0, 0.0], dtype=np.complex128)
        L_I = project(psi_I, m).lam
        L_F = project(antipodal_state(psi_I, p), m).lam
        ratio = p.beta / p.a
        want_I = np.array([[1.0, ratio], [0.0, 0.0]])
        want_F = np.array([[0.0, -ratio], [0.0, 1.0]])
        return max(np.max(np.abs(L_I - want_I)), np.max(np.abs(L_F - want_F)))
    return _run_cases("explicit two-level projections", 1e-13, min(cases, 1), 0, 5, case)


def trace_identity_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """phys_trace over three distinct eta-orthonormal bases equals the diagonal sum"""
    def case(rng, k):
        n = _dim(rng, max(dim_max, TRACE_DIM_MAX))
        m = _random_metric(rng, n)
        A = random_complex(rng, (n, n))
        starts = (None, random_complex(rng, (n, n)), np.eye(n)[:, ::-1])
        expected = np.trace(A)
        return max(abs(phys_trace(A, m, s) - expected) for s in starts) / (1.0 + norm(A))
    return _run_cases("trace identity", 1e-12, cases, seed, 6, case)


def metric_tensor_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """Contracting the metric tensor reproduces the closed-form line element"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        z, dz = random_state(rng, n), random_state(rng, n)
        ds2 = line_element(z, dz, m)
        return abs(metric_tensor(z, m).contract(dz) - ds2) / ds2
    return _run_cases("metric tensor contraction", 1e-10, cases, seed, 7, case)


def metric_degeneracy_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """The contraction vanishes along dz = c z and is positive on the eta-orthogonal complement"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        z = random_state(rng, n)
        g = metric_tensor(z, m)
        c = complex(*rng.standard_normal(2))
        null = abs(g.contract(c * z)) / (norm(g.components) * abs(c) ** 2 * norm(z) ** 2)
        chi = random_state(rng, n)
        perp = chi - (physical_inner(z, chi, m) / physical_norm_sq(z, m)) * z
        return null if g.contract(perp) > 0 else math.inf
    return _run_cases("metric tensor degeneracy", 1e-12, cases, seed, 21, case)


def finite_difference_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """tr(dLambda# dLambda) at |dpsi| = FD_STEP against the closed-form line element"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        m = _random_metric(rng, n)
        z = random_state(rng, n)
        dz = random_state(rng, n)
        dz = config.FD_STEP * dz / norm(dz)
        ds2 = line_element(z, dz, m)
        return abs(finite_difference_line_element(z, dz, m) - ds2) / ds2
    return _run_cases("finite-difference metric", 1e-3, cases, seed, 8, case)


def chart_line_element_suite(seed: int, cases: int) -> SuiteResult:
    """Two-level chart line element against the metric tensor at (1, x + iy)"""
    def case(rng, k):
        p = _random_two_level_params(rng)
        x, y, dx, dy = rng.standard_normal(4)
        point = ChartPoint(float(x), float(y))
        chart = two_level_line_element(point, dx, dy, p)
        tensor = metric_tensor(point.embed(), p.metric()).contract(np.array([0.0, complex(dx, dy)]))
        return abs(chart - tensor) / chart
    return _run_cases("chart line element", 1e-12, cases, seed, 9, case)


def fubini_study_suite(seed: int, cases: int) -> SuiteResult:
    """At eta = I the chart line element is 2(dx^2 + dy^2)/(1 + x^2 + y^2)^2"""
    identity = TwoLevelMetricParams(1.0, 0.0, 0.0, 1.0)

    def case(rng, k):
        x, y, dx, dy = rng.standard_normal(4)
        expected = 2.0 * (dx ** 2 + dy ** 2) / (1.0 + x ** 2 + y ** 2) ** 2
        return abs(two_level_line_element(ChartPoint(float(x), float(y)), dx, dy, identity) - expected) / expected
    return _run_cases("Fubini-Study reduction", 1e-13, cases, seed, 10, case)


def isometry_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """
    Path lengths agree before and after the map Lambda -> eta^1/2 Lambda eta^-1/2,
    alternating dynamical orbits and smooth non-dynamical curves
    """
    def case(rng, k):
        n = _dim(rng, dim_max)
        if k % 2 == 0:
            H, eta = random_pseudo_hermitian(rng, n)
            m = MetricOperator.from_matrix(eta)
            traj = path_length(H, m, random_state(rng, n), float(rng.uniform(0.5, 3.0)))
            mirrored = mirror_trajectory(traj)
            return abs(traj.path_length - mirrored.path_length) / traj.path_length

        m = _random_metric(rng, n)
        c0, c1, c2 = (random_state(rng, n) for _ in range(3))
        omega = float(rng.uniform(1.0, 4.0))
        s = np.linspace(0.0, 1.0, CURVE_SAMPLES)
        points = c0[None, :] + s[:, None] * c1[None, :] + np.sin(omega * s)[:, None] * c2[None, :]
        derivs = c1[None, :] + omega * np.cos(omega * s)[:, None] * c2[None, :]
        S_T = m.eta_sqrt.T
        identity = MetricOperator.identity(n)
        length = curve_length(points, m, s, derivs)
        mapped = curve_length(points @ S_T, identity, s, derivs @ S_T)
        return abs(length - mapped) / length
    return _run_cases("isometry of path lengths", 1e-8, cases, seed, 11, case)


def geodesic_length_suite(seed: int, cases: int) -> SuiteResult:
    """Closed-form two-level distance against the integrated length of the great circle"""
    def case(rng, k):
        m = _random_metric(rng, 2)
        s1, s2 = project(random_state(rng, 2), m), project(random_state(rng, 2), m)
        params, points, tangents = great_circle(s1, s2, CURVE_SAMPLES)
        return abs(curve_length(points, m, params, tangents) - geodesic_distance(s1, s2))
    return _run_cases("geodesic length", 1e-6, cases, seed, 22, case)


# ==================== Evolution ====================

def pseudo_unitarity_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """U# U = I and conserved physical norm after PERIODS gap-periods"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        H, eta = random_pseudo_hermitian(rng, n)
        m = MetricOperator.from_matrix(eta)
        Hm = Hamiltonian.from_matrix(H)
        t = PERIODS * 2.0 * math.pi / Hm.gap
        U = propagator(Hm, t)
        psi = random_state(rng, n)
        before = physical_norm_sq(psi, m)
        drift = abs(physical_norm_sq(U.matrix @ psi, m) - before) / before
        return max(check_pseudo_unitarity(U, m), drift)
    return _run_cases("pseudo-unitarity", 1e-10, cases, seed, 12, case)


def propagator_group_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """U(t1) U(t2) = U(t1 + t2)"""
    def case(rng, k):
        H = Hamiltonian.from_matrix(random_pseudo_hermitian(rng, _dim(rng, dim_max))[0])
        t1, t2 = rng.uniform(-3.0, 3.0, size=2)
        joint = propagator(H, t1 + t2).matrix
        return relative_residual(propagator(H, t1).matrix @ propagator(H, t2).matrix - joint, joint)
    return _run_cases("propagator group law", 1e-10, cases, seed, 23, case)


def mirror_square_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """Evolving under H then mapping equals mapping then evolving under h"""
    def case(rng, k):
        n = _dim(rng, dim_max)
        M, eta = random_pseudo_hermitian(rng, n)
        H = Hamiltonian.from_matrix(M)
        m = MetricOperator.from_matrix(eta)
        h = hermitian_counterpart(H, m)
        psi = random_state(rng, n)
        t = float(rng.uniform(0.0, 5.0))
        mapped_after = map_state(evolve_state(H, psi, t), m)
        mapped_before = evolve_state(h, map_state(psi, m), t)
        return norm(mapped_after - mapped_before) / norm(mapped_before)
    return _run_cases("evolution commutes with the map", 1e-10, cases, seed, 24, case)


def path_convergence_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """
    Halving the trapezoidal step cuts the length error at least threefold; orbits
    (constant speed) alternate with smooth curves of varying speed
    """
    steps = 200

    def lengths(measure):
        return [measure(steps * f) for f in (1, 2, 8)]

    def case(rng, k):
        n = _dim(rng, dim_max)
        if k % 2 == 0:
            H, eta = random_pseudo_hermitian(rng, n)
            m = MetricOperator.from_matrix(eta)
            psi = random_state(rng, n)
            t = float(rng.uniform(0.5, 3.0))
            coarse, fine, ref = lengths(lambda N: path_length(H, m, psi, t, N).path_length)
        else:
            m = _random_metric(rng, n)
            c0, c1, c2 = (random_state(rng, n) for _ in range(3))
            omega = float(rng.uniform(1.0, 4.0))

            def measure(N):
                s = np.linspace(0.0, 1.0, N + 1)
                points = c0[None, :] + s[:, None] * c1[None, :] + np.sin(omega * s)[:, None] * c2[None, :]
                derivs = c1[None, :] + omega * np.cos(omega * s)[:, None] * c2[None, :]
                return curve_length(points, m, s, derivs)
            coarse, fine, ref = lengths(measure)
        return abs(fine - ref) / max(abs(coarse - ref), 1e-12 * ref)
    return _run_cases("path-length convergence", 1.0 / 3.0, cases, seed, 25, case)


# ==================== Brachistochrone ====================

def antipodality_suite(seed: int, cases: int) -> SuiteResult:
    """The mapped pair of an antipodal two-level pair is antipodal with eta = I"""
    def case(rng, k):
        p = _random_two_level_params(rng)
        m = p.metric()
        psi_I = np.array([1.0, 0.0], dtype=np.complex128)
        L_I = isometry_map(project(psi_I, m))
        L_F = isometry_map(project(antipodal_state(psi_I, p), m))
        return max(norm(L_I @ L_F), norm(L_F @ L_I))
    return _run_cases("antipodality preservation", 1e-12, cases, seed, 13, case)


def s_z_grid_suite(cases: int) -> SuiteResult:
    """S_z is an observable exactly for the diagonal metrics of the parameter grid"""
    if cases <= 0:
        return SuiteResult("S_z observability grid", True, 0.0, 0.0, 0, "no cases")
    mismatches = 0
    checked = 0
    for a in S_Z_DIAGONAL_VALUES:
        for c in S_Z_DIAGONAL_VALUES:
            for b1 in S_Z_COUPLING_VALUES:
                for b2 in S_Z_COUPLING_VALUES:
                    if a * c - b1 ** 2 - b2 ** 2 <= 0:
                        continue
                    checked += 1
                    expected = b1 == 0 and b2 == 0
                    if s_z_observability_demo(TwoLevelMetricParams(a, b1, b2, c)) != expected:
                        mismatches += 1
    return SuiteResult("S_z observability grid", mismatches == 0, float(mismatches), 0.0, checked)


def _random_problem(rng: np.random.Generator, dim_max: int):
    n = _dim(rng, dim_max)
    m = _random_metric(rng, n)
    return problem_from_vectors(random_state(rng, n), random_state(rng, n), m, float(rng.uniform(0.5, 2.0)))


def equal_time_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """Travel time under (H, eta) equals travel time under (h, I) between the mapped rays"""
    def case(rng, k):
        p = _random_problem(rng, dim_max)
        H, h, _ = sample_connecting_hamiltonian(p, rng)
        tau = travel_time(H, p.metric, p.initial, p.final, tol=config.SWEEP_ORBIT_TOL, hbar=p.hbar)
        identity = MetricOperator.identity(p.dim)
        initial = PhysicalState(isometry_map(p.initial), identity)
        final = PhysicalState(isometry_map(p.final), identity)
        tau_h = travel_time(h, identity, initial, final, tol=config.SWEEP_ORBIT_TOL, hbar=p.hbar)
        return abs(tau - tau_h)
    return _run_cases("equal-time equivalence", 1e-10, 2 * cases, seed, 14, case)


def universality_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """No connecting generator beats the bound and the optimal generator attains it"""
    def case(rng, k):
        p = _random_problem(rng, dim_max)
        bound = min_time_bound(p)
        if k % 2 == 0:
            return abs(optimal_hamiltonian(p).travel_time - bound)
        H, _, _ = sample_connecting_hamiltonian(p, rng)
        tau = travel_time(H, p.metric, p.initial, p.final, tol=config.SWEEP_ORBIT_TOL, hbar=p.hbar)
        return max(bound - tau, 0.0)
    return _run_cases("travel-time bound", config.SWEEP_VIOLATION_TOL, 2 * cases, seed, 15, case)


def gap_scaling_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """gap -> k gap divides the bound and the travel time of the scaled generator by k"""
    def case(rng, k):
        p = _random_problem(rng, dim_max)
        factor = float(rng.uniform(0.5, 3.0))
        scaled = problem_from_vectors(p.initial.representative, p.final.representative,
                                      p.metric, factor * p.gap, p.hbar)
        _, h, _ = sample_connecting_hamiltonian(p, rng)
        H = hamiltonian_from_counterpart(h, p.metric)
        H_k = hamiltonian_from_counterpart(factor * h, p.metric)
        tau = travel_time(H, p.metric, p.initial, p.final, tol=config.SWEEP_ORBIT_TOL, hbar=p.hbar)
        tau_k = travel_time(H_k, p.metric, p.initial, p.final, tol=config.SWEEP_ORBIT_TOL, hbar=p.hbar)
        bound = min_time_bound(p)
        return max(abs(factor * tau_k - tau) / tau, abs(factor * min_time_bound(scaled) - bound) / bound)
    return _run_cases("gap scaling", 1e-10, cases, seed, 26, case)


def bound_positivity_suite(seed: int, cases: int, dim_max: int) -> SuiteResult:
    """min_time_bound > 0 for distinct rays; the residual counts failures"""
    def case(rng, k):
        return 0.0 if min_time_bound(_random_problem(rng, dim_max)) > 0 else 1.0
    return _run_cases("bound positivity", 0.0, cases, seed, 27, case)


# ==================== Runner ====================

def run_all(seed: Optional[int] = None, cases: Optional[int] = None,
            dim_max: Optional[int] = None) -> List[SuiteResult]:
    seed = seed if seed is not None else config.VERIFY_SEED
    cases = cases if cases is not None else config.VERIFY_CASES
    dim_max = dim_max if dim_max is not None else config.VERIFY_DIM_MAX
    if dim_max < 2:
        raise ValueError(f"dim_max must be at least 2, got {dim_max}")

    return [
        reconstruction_suite(seed, cases, dim_max),
        herm_sqrt_suite(seed, cases, dim_max),
        sqrt_commutation_suite(seed, cases, dim_max),
        expm_group_suite(seed, cases, dim_max),
        adjoint_suite(seed, cases, dim_max),
        pseudo_hermiticity_suite(seed, cases, dim_max),
        pseudo_adjoint_suite(seed, cases, dim_max),
        expectation_suite(seed, cases, dim_max),
        projection_algebra_suite(seed, cases, dim_max),
        gauge_invariance_suite(seed, cases, dim_max),
        explicit_projection_suite(cases),
        trace_identity_suite(seed, cases, dim_max),
        metric_tensor_suite(seed, cases, dim_max),
        metric_degeneracy_suite(seed, cases, dim_max),
        finite_difference_suite(seed, cases, dim_max),
        chart_line_element_suite(seed, cases),
        fubini_study_suite(seed, cases),
        isometry_suite(seed, cases, dim_max),
        geodesic_length_suite(seed, cases),
        pseudo_unitarity_suite(seed, cases, dim_max),
        propagator_group_suite(seed, cases, dim_max),
        mirror_square_suite(seed, cases, dim_max),
        path_convergence_suite(seed, cases, dim_max),
        antipodality_suite(seed, cases),
        s_z_grid_suite(cases),
        equal_time_suite(seed, cases, dim_max),
        universality_suite(seed, cases, dim_max),
        gap_scaling_suite(seed, cases, dim_max),
        bound_positivity_suite(seed, cases, dim_max),
    ]
