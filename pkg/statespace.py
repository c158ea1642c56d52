"""
Physical State Space
Rays as eta-orthogonal projections, the operator trace inner product and the induced metric
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid

import config
from pseudoherm import (
    MetricOperator,
    map_state,
    physical_inner,
    physical_norm_sq,
    pseudo_adjoint,
)
from utils import (
    DimensionMismatch,
    InvalidMetricParams,
    MetricMismatch,
    OutsideChart,
    ZeroState,
    as_matrix,
    as_vector,
    check_same_dim,
    norm,
)

# ==================== Domain Types ====================

@dataclass(frozen=True, eq=False)
class PhysicalState:
    """A ray stored as its eta-orthogonal rank-1 projection Lambda"""
    lam: np.ndarray
    metric: MetricOperator

    @property
    def dim(self) -> int:
        return self.metric.dim

    @property
    def representative(self) -> np.ndarray:
        """A generator of the column space of Lambda"""
        j = int(np.argmax(np.linalg.norm(self.lam, axis=0)))
        col = self.lam[:, j]
        return col / norm(col)

    def residuals(self) -> dict:
        L = self.lam
        return {
            "idempotence": norm(L @ L - L),
            "self_adjointness": norm(pseudo_adjoint(L, self.metric) - L),
            "trace": abs(np.trace(L) - 1.0),
        }


@dataclass(frozen=True)
class TwoLevelMetricParams:
    """eta = [[a, b1 + i b2], [b1 - i b2, c]]"""
    a: float
    b1: float
    b2: float
    c: float

    def __post_init__(self):
        values = (self.a, self.b1, self.b2, self.c)
        if not all(math.isfinite(x) for x in values):
            raise InvalidMetricParams(f"metric parameters must be finite, got {values}")
        if self.a <= 0 or self.c <= 0 or self.det <= 0:
            raise InvalidMetricParams(
                f"metric is not positive-definite: a={self.a}, c={self.c}, d={self.det}"
            )

    @classmethod
    def from_matrix(cls, eta) -> "TwoLevelMetricParams":
        E = as_matrix(eta)
        check_same_dim(E, 2, "two-level metric")
        beta = (E[0, 1] + np.conj(E[1, 0])) / 2
        return cls(float(E[0, 0].real), float(beta.real), float(beta.imag), float(E[1, 1].real))

    @property
    def beta(self) -> complex:
        return complex(self.b1, self.b2)

    @property
    def det(self) -> float:
        return self.a * self.c - (self.b1 ** 2 + self.b2 ** 2)

    @property
    def is_diagonal(self) -> bool:
        return self.b1 == 0 and self.b2 == 0

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.beta], [np.conj(self.beta), self.c]], dtype=np.complex128)

    def metric(self) -> MetricOperator:
        return MetricOperator.from_matrix(self.matrix())


@dataclass(frozen=True)
class ChartPoint:
    """zeta = z2/z1 = x + iy in the chart z1 != 0"""
    x: float
    y: float

    @property
    def zeta(self) -> complex:
        return complex(self.x, self.y)

    def embed(self) -> np.ndarray:
        return np.array([1.0, self.zeta], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class MetricTensor:
    """Components g_ij* of the state-space metric at a point of C^N"""
    dim: int
    components: np.ndarray

    def contract(self, dz) -> float:
        """sum_ij g_ij* dz_i dz_j*"""
        v = as_vector(dz, self.dim)
        return float((v @ self.components @ v.conj()).real)


# ==================== Projections ====================

def project(psi, metric: MetricOperator) -> PhysicalState:
    """Lambda = |psi><psi| eta / <psi|eta psi>"""
    v = as_vector(psi, metric.dim)
    row = v.conj() @ metric.eta
    nn = float((row @ v).real)
    if not nn > 0:
        raise ZeroState()
    return PhysicalState(np.outer(v, row) / nn, metric)


def check_shared_metric(s1: PhysicalState, s2: PhysicalState):
    if not s1.metric.same_as(s2.metric):
        raise MetricMismatch("states are defined with respect to different metric operators")


# ==================== Operator Inner Product and Trace ====================

def op_inner(A, B, metric: MetricOperator) -> complex:
    """(A, B) = tr(A# B)"""
    M = as_matrix(B)
    check_same_dim(M, metric.dim)
    return complex(np.trace(pseudo_adjoint(A, metric) @ M))


def eta_orthonormal_basis(metric: MetricOperator, start=None) -> np.ndarray:
    """
    Gram-Schmidt in the physical inner product, starting from the columns of
    `start` (standard basis by default); numerically dependent columns are skipped
    """
    n = metric.dim
    seeds = np.eye(n, dtype=np.complex128) if start is None else as_matrix(start, square=False)
    if seeds.shape[0] != n:
        raise DimensionMismatch(f"starting vectors have dimension {seeds.shape[0]}, expected {n}")

    basis = []
    for k in range(seeds.shape[1]):
        v = seeds[:, k].copy()
        v_norm = math.sqrt(max(physical_norm_sq(v, metric), 0.0))
        if v_norm == 0.0:
            continue
        # two passes keep the basis orthonormal to roundoff
        for _ in range(2):
            for b in basis:
                v = v - physical_inner(b, v, metric) * b
        r = math.sqrt(max(physical_norm_sq(v, metric), 0.0))
        if r <= 1e-10 * v_norm:
            continue
        basis.append(v / r)
        if len(basis) == n:
            break

    if len(basis) < n:
        raise DimensionMismatch(f"starting vectors span only {len(basis)} of {n} dimensions")
    return np.column_stack(basis)


def phys_trace(A, metric: MetricOperator, start=None) -> complex:
    """sum_n <psi_n, A psi_n> over an eta-orthonormal basis"""
    M = as_matrix(A)
    check_same_dim(M, metric.dim)
    B = eta_orthonormal_basis(metric, start)
    return complex(np.trace(B.conj().T @ metric.eta @ M @ B))


def fidelity(s1: PhysicalState, s2: PhysicalState) -> float:
    """|<psi1, psi2>|^2 / (<psi1, psi1><psi2, psi2>) = tr(Lambda1 Lambda2)"""
    check_shared_metric(s1, s2)
    return float(min(max(np.trace(s1.lam @ s2.lam).real, 0.0), 1.0))


# ==================== Metric on the State Space ====================

def line_element(psi, dpsi, metric: MetricOperator) -> float:
    """ds^2 = 2[<psi,psi><dpsi,dpsi> - |<psi,dpsi>|^2] / <psi,psi>^2"""
    v = as_vector(psi, metric.dim)
    dv = as_vector(dpsi, metric.dim)
    nn = physical_norm_sq(v, metric)
    if not nn > 0:
        raise ZeroState()
    # the component of dpsi eta-orthogonal to psi carries the whole line element
    perp = dv - (physical_inner(v, dv, metric) / nn) * v
    return max(2.0 * physical_norm_sq(perp, metric) / nn, 0.0)


def finite_difference_line_element(psi, dpsi, metric: MetricOperator) -> float:
    """tr(dLambda# dLambda) with dLambda = Lambda(psi + dpsi) - Lambda(psi)"""
    v = as_vector(psi, metric.dim)
    dv = as_vector(dpsi, metric.dim)
    dL = project(v + dv, metric).lam - project(v, metric).lam
    return float(np.trace(pseudo_adjoint(dL, metric) @ dL).real)


def metric_tensor(z, metric: MetricOperator) -> MetricTensor:
    """g_ij* = 2 sum_pq [eta_pq eta_ji - eta_pi eta_jq] z_p* z_q / (z† eta z)^2"""
    v = as_vector(z, metric.dim)
    eta = metric.eta
    n = float(np.vdot(v, eta @ v).real)
    if not n > 0:
        raise ZeroState()
    u = v.conj() @ eta
    w = eta @ v
    sign = -1.0 if config.INJECT_METRIC_SIGN_FAULT else 1.0
    g = 2.0 * (n * eta.T - sign * np.outer(u, w)) / n ** 2
    return MetricTensor(metric.dim, g)


def two_level_line_element(p: ChartPoint, dx: float, dy: float, m: TwoLevelMetricParams) -> float:
    """ds^2 = 2d(dx^2 + dy^2) / [a + 2(b1 x - b2 y) + c(x^2 + y^2)]^2"""
    denom = m.a + 2.0 * (m.b1 * p.x - m.b2 * p.y) + m.c * (p.x ** 2 + p.y ** 2)
    return 2.0 * m.det * (dx ** 2 + dy ** 2) / denom ** 2


def chart_point(z) -> ChartPoint:
    v = as_vector(z, 2)
    if abs(v[0]) < config.CHART_Z1_MIN * norm(v):
        raise OutsideChart(f"z1 = {v[0]} is outside the chart z1 != 0")
    zeta = v[1] / v[0]
    return ChartPoint(float(zeta.real), float(zeta.imag))


def two_level_route(z, dz, m: TwoLevelMetricParams) -> float:
    """Two-level line element through the chart when possible, the general tensor otherwise"""
    v = as_vector(z, 2)
    dv = as_vector(dz, 2)
    try:
        p = chart_point(v)
    except OutsideChart:
        return metric_tensor(v, m.metric()).contract(dv)
    dzeta = (dv[1] * v[0] - v[1] * dv[0]) / v[0] ** 2
    return two_level_line_element(p, float(dzeta.real), float(dzeta.imag), m)


def curve_speeds(points, metric: MetricOperator, params, derivatives=None) -> np.ndarray:
    """ds/ds' along a sampled curve of vectors; central differences when no derivatives are given"""
    P = np.asarray(points, dtype=np.complex128)
    s = np.asarray(params, dtype=float)
    D = np.gradient(P, s, axis=0) if derivatives is None else np.asarray(derivatives, dtype=np.complex128)
    return np.array([math.sqrt(line_element(P[k], D[k], metric)) for k in range(len(s))])


def curve_length(points, metric: MetricOperator, params, derivatives=None) -> float:
    """Trapezoidal length of a sampled curve in the state-space metric"""
    return float(trapezoid(curve_speeds(points, metric, params, derivatives), np.asarray(params, dtype=float)))


# ==================== Isometry and Distances ====================

def isometry_map(state: PhysicalState) -> np.ndarray:
    """f(Lambda) = eta^1/2 Lambda eta^-1/2, a conventional orthogonal projection"""
    m = state.metric
    return m.eta_sqrt @ state.lam @ m.eta_inv_sqrt


def _mapped_unit(state: PhysicalState) -> np.ndarray:
    v = map_state(state.representative, state.metric)
    return v / norm(v)


def geodesic_distance(s1: PhysicalState, s2: PhysicalState) -> float:
    """
    sqrt(2)·arccos(|<psi1'|psi2'>| / (|psi1'||psi2'|)), evaluated as a
    half-angle arctangent so both ends of the range stay accurate
    """
    check_shared_metric(s1, s2)
    u = _mapped_unit(s1)
    v = _mapped_unit(s2)
    o = np.vdot(u, v)
    phase = np.conj(o) / abs(o) if abs(o) > 0 else 1.0
    w = phase * v
    theta = 2.0 * math.atan2(norm(u - w), norm(u + w))
    return math.sqrt(2.0) * theta


def is_antipodal(s1: PhysicalState, s2: PhysicalState, tol: Optional[float] = None) -> bool:
    tol = tol if tol is not None else config.DEFAULT_TOL
    check_shared_metric(s1, s2)
    return norm(s1.lam @ s2.lam) < tol and norm(s2.lam @ s1.lam) < tol


def antipodal_state(psi_I, m: Union[TwoLevelMetricParams, MetricOperator]) -> np.ndarray:
    """
    Representative of the eta-orthogonal ray in two dimensions; for psi_I = (1, 0)
    this is (beta, -a)
    """
    v = as_vector(psi_I, 2)
    if not norm(v) > 0:
        raise ZeroState()
    eta = m.matrix() if isinstance(m, TwoLevelMetricParams) else m.eta
    check_same_dim(eta, 2, "two-level metric")
    w = eta @ v
    return np.array([np.conj(w[1]), -np.conj(w[0])], dtype=np.complex128)


def great_circle(s1: PhysicalState, s2: PhysicalState, samples: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    The geodesic from s1 to s2 pulled back from the conventional projective space;
    returns (parameters, vectors, derivatives) with unit speed in the angle parameter
    """
    check_shared_metric(s1, s2)
    u = _mapped_unit(s1)
    v = _mapped_unit(s2)
    o = np.vdot(u, v)
    perp = v - o * u
    r = norm(perp)
    if r == 0.0:
        raise ZeroState("states coincide; no great circle between them")
    w = perp / r
    theta = math.atan2(r, abs(o))
    phase = o / abs(o) if abs(o) > 0 else 1.0
    s = np.linspace(0.0, theta, samples)
    curve = np.cos(s)[:, None] * (phase * u)[None, :] + np.sin(s)[:, None] * w[None, :]
    tangent = -np.sin(s)[:, None] * (phase * u)[None, :] + np.cos(s)[:, None] * w[None, :]
    S_inv = s1.metric.eta_inv_sqrt
    return s, curve @ S_inv.T, tangent @ S_inv.T
