"""
Command-Line Interface
Sub-commands over the toolkit with the stable exit-code contract
0 success, 1 I/O or parse failure, 2 domain error, 3 verification failure
"""

import argparse
import os
from typing import List, Optional

import numpy as np

import config
import export
import property_suites
from brachistochrone import (
    antipodal_problem,
    min_time_bound,
    optimal_hamiltonian,
    pt_symmetric_demo,
    sweep_hamiltonians,
)
from evolution import mirror_trajectory, path_length
from linalg import hermitian_residual
from pseudoherm import (
    Hamiltonian,
    MetricOperator,
    build_metric_operator,
    hermitian_counterpart,
    pseudo_hermiticity_residual,
    validate_pseudo_hermiticity,
)
from statespace import TwoLevelMetricParams, geodesic_distance, is_antipodal, project
from utils import MatrixFileError, PseudoHermitianError, as_vector


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _print_matrix(tag: str, M: np.ndarray):
    for row in np.atleast_2d(M):
        print(f"[{tag}]   " + "  ".join(_fmt_complex(complex(z)) for z in row))


def _sibling(path: str, suffix: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}{suffix}{ext or '.json'}"


def _load_operator(path: str) -> np.ndarray:
    M, _ = export.read_matrix_file(path)
    if M.shape[0] != M.shape[1]:
        raise MatrixFileError(f"{path}: expected a square matrix, got a {M.shape[0]}x{M.shape[1]} vector")
    return M


def _load_hamiltonian(path: str) -> Hamiltonian:
    return Hamiltonian.from_matrix(_load_operator(path))


def _load_metric(path: Optional[str], H: Optional[Hamiltonian] = None) -> MetricOperator:
    """Metric from file (validated against H when given), else the canonical metric of H"""
    if path is None:
        return build_metric_operator(H)
    metric = MetricOperator.from_matrix(_load_operator(path))
    if H is not None:
        validate_pseudo_hermiticity(H, metric)
    return metric


def _load_vector(path: str, dim: Optional[int] = None) -> np.ndarray:
    v, _ = export.read_matrix_file(path)
    if v.shape[1] != 1:
        raise MatrixFileError(f"{path}: expected a state vector (dim x 1), got a {v.shape[0]}x{v.shape[1]} matrix")
    return as_vector(v, dim)


# ==================== Commands ====================

def cmd_metric(args) -> int:
    H = _load_hamiltonian(args.input)
    metric = build_metric_operator(H)
    out = args.out or config.DEFAULT_METRIC_FILENAME
    export.write_matrix_file(out, metric.eta, "eta_plus")
    export.write_matrix_file(_sibling(out, "_sqrt"), metric.eta_sqrt, "eta_plus^1/2")
    export.write_matrix_file(_sibling(out, "_inv_sqrt"), metric.eta_inv_sqrt, "eta_plus^-1/2")

    print(f"[Metric] spectrum: {', '.join(_fmt(E) for E in H.energies)}")
    print(f"[Metric] pseudo-Hermiticity residual: {pseudo_hermiticity_residual(H, metric):.3e}")
    print(f"[Metric] wrote {out}, {_sibling(out, '_sqrt')}, {_sibling(out, '_inv_sqrt')}")
    return config.EXIT_OK


def cmd_hermitize(args) -> int:
    H = _load_hamiltonian(args.input)
    metric = _load_metric(args.metric, H)
    h = hermitian_counterpart(H, metric)
    out = args.out or config.DEFAULT_HERMITIAN_FILENAME
    export.write_matrix_file(out, h, "hermitian_counterpart")

    h_energies = np.linalg.eigvalsh((h + h.conj().T) / 2)
    print(f"[Hermitize] Hermiticity residual: {hermitian_residual(h):.3e}")
    print(f"[Hermitize] spectrum of H: {', '.join(_fmt(E) for E in H.energies)}")
    print(f"[Hermitize] spectrum of h: {', '.join(_fmt(E) for E in h_energies)}")
    print(f"[Hermitize] max spectral difference: {np.max(np.abs(h_energies - H.energies)):.3e}")
    print(f"[Hermitize] wrote {out}")
    return config.EXIT_OK


def cmd_geodesic(args) -> int:
    psi1 = _load_vector(args.state1)
    psi2 = _load_vector(args.state2, len(psi1))
    metric = _load_metric(args.metric) if args.metric else MetricOperator.identity(len(psi1))
    s1, s2 = project(psi1, metric), project(psi2, metric)
    print(f"[Geodesic] distance: {_fmt(geodesic_distance(s1, s2))}")
    print(f"[Geodesic] antipodal: {is_antipodal(s1, s2)}")
    return config.EXIT_OK


def cmd_evolve(args) -> int:
    H = _load_hamiltonian(args.hamiltonian)
    metric = _load_metric(args.metric, H)
    psi0 = _load_vector(args.psi0, H.dim)

    traj = path_length(H, metric, psi0, args.t_final, args.steps, args.hbar)
    mirrored = mirror_trajectory(traj)
    out = args.out or config.DEFAULT_TRAJECTORY_FILENAME
    export.write_trajectory_file(out, traj)

    diff = abs(traj.path_length - mirrored.path_length)
    print(f"[Evolve] steps: {len(traj.times) - 1}")
    print(f"[Evolve] path length: {_fmt(traj.path_length)}")
    print(f"[Evolve] mirror path length: {_fmt(mirrored.path_length)}")
    print(f"[Evolve] difference: {diff:.3e}")
    print(f"[Evolve] wrote {out}")
    return config.EXIT_OK


def _metric_params(args) -> TwoLevelMetricParams:
    if args.metric:
        E = _load_operator(args.metric)
        MetricOperator.from_matrix(E)
        return TwoLevelMetricParams.from_matrix(E)
    try:
        values = [float(x) for x in args.eta_params.split(",")]
    except ValueError as e:
        raise MatrixFileError(f"--eta-params must be four numbers a,b1,b2,c: {e}") from e
    if len(values) != 4:
        raise MatrixFileError(f"--eta-params must be four numbers a,b1,b2,c, got {len(values)}")
    return TwoLevelMetricParams(*values)


def cmd_brach(args) -> int:
    m = _metric_params(args)
    p = antipodal_problem(m, args.gap, args.hbar)
    bound = min_time_bound(p)
    solution = optimal_hamiltonian(p)

    print(f"[Brach] metric (a, b1, b2, c) = ({_fmt(m.a)}, {_fmt(m.b1)}, {_fmt(m.b2)}, {_fmt(m.c)}), d = {_fmt(m.det)}")
    print(f"[Brach] min_time_bound: {_fmt(bound)}")
    print("[Brach] optimal Hamiltonian:")
    _print_matrix("Brach", solution.hamiltonian.matrix)
    print(f"[Brach] achieved travel time: {_fmt(solution.travel_time)} (|diff| = {abs(solution.travel_time - bound):.3e})")

    report = sweep_hamiltonians(p, args.samples, args.seed, vary_metric=args.vary_metric, workers=args.workers)
    print(f"[Brach] sweep: {report.samples} samples, {report.accepted} accepted, {report.rejected} rejected")
    print(f"[Brach] sweep tau min/mean/max: {_fmt(report.tau_min)} / {_fmt(report.tau_mean)} / {_fmt(report.tau_max)}")
    if args.vary_metric:
        print(f"[Brach] sweep bound range: {_fmt(report.bound_min)} .. {_fmt(report.bound_max)}")
    print(f"[Brach] histogram counts: {' '.join(str(int(c)) for c in report.hist_counts)}")
    print(f"[Brach] violations: {report.violations}")
    if args.out:
        export.write_sweep_table(args.out, report)
        print(f"[Brach] wrote {args.out}")
    return config.EXIT_OK if report.violations == 0 else config.EXIT_VERIFY


def cmd_verify(args) -> int:
    results = property_suites.run_all(args.seed, args.cases, args.dim_max)
    if args.cases == 0:
        print("[Verify] no cases requested")
    for r in results:
        print(f"[Verify] {r.summary()}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"[Verify] {len(failed)} suite(s) failed: {', '.join(failed)}")
        return config.EXIT_VERIFY
    print(f"[Verify] all {len(results)} suites passed")
    return config.EXIT_OK


def cmd_pt_demo(args) -> int:
    report = pt_symmetric_demo(args.r, args.s, args.theta, args.hbar)
    print(f"[PT] energies: {_fmt(report.energies[0])}, {_fmt(report.energies[1])} (gap {_fmt(report.gap)})")
    print("[PT] metric operator:")
    _print_matrix("PT", report.metric)
    print(f"[PT] geodesic distance (1,0) -> (0,1): {_fmt(report.distance)}")
    print(f"[PT] min_time_bound: {_fmt(report.bound)}")
    print(f"[PT] measured travel time: {_fmt(report.travel_time)}")
    print(f"[PT] pi*hbar/gap for comparison: {_fmt(report.hermitian_bound)}")
    print(f"[PT] travel time respects bound: {report.respects_bound}")
    return config.EXIT_OK if report.respects_bound else config.EXIT_VERIFY


# ==================== Parser ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Pseudo-Hermitian quantum mechanics: metric operators, state-space geometry and brachistochrones.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metric", help="Build eta_+ and its square roots for a Hamiltonian.")
    p.add_argument("input", help="MatrixFile with the Hamiltonian.")
    p.add_argument("--out", default=None, help=f"Output MatrixFile for eta_+ (default {config.DEFAULT_METRIC_FILENAME}).")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("hermitize", help="Hermitian counterpart h = eta^1/2 H eta^-1/2.")
    p.add_argument("input", help="MatrixFile with the Hamiltonian.")
    p.add_argument("--metric", default=None, help="MatrixFile with eta_+ (built from H when omitted).")
    p.add_argument("--out", default=None, help=f"Output MatrixFile (default {config.DEFAULT_HERMITIAN_FILENAME}).")
    p.set_defaults(func=cmd_hermitize)

    p = sub.add_parser("geodesic", help="Geodesic distance between two rays.")
    p.add_argument("state1")
    p.add_argument("state2")
    p.add_argument("--metric", default=None, help="MatrixFile with eta_+ (identity when omitted).")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("evolve", help="Evolve a state and integrate its path length.")
    p.add_argument("hamiltonian")
    p.add_argument("psi0")
    p.add_argument("--metric", default=None, help="MatrixFile with eta_+ (built from H when omitted).")
    p.add_argument("--t-final", type=float, required=True)
    p.add_argument("--steps", type=int, default=None, help="Grid intervals (default 1000 per pi*hbar/gap).")
    p.add_argument("--hbar", type=float, default=config.HBAR)
    p.add_argument("--out", default=None, help=f"TrajectoryFile (default {config.DEFAULT_TRAJECTORY_FILENAME}).")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("brach", help="Brachistochrone between (1,0) and its eta-orthogonal partner.")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--metric", default=None, help="MatrixFile with a two-level eta_+.")
    source.add_argument("--eta-params", default=None, help="a,b1,b2,c")
    p.add_argument("--gap", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=config.HBAR)
    p.add_argument("--samples", type=int, default=config.SWEEP_SAMPLES)
    p.add_argument("--seed", type=int, default=config.SWEEP_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--vary-metric", action="store_true", help="Redraw an admissible eta_+ for every sample.")
    p.add_argument("--out", default=None, help="Per-sample sweep table (CSV).")
    p.set_defaults(func=cmd_brach)

    p = sub.add_parser("verify", help="Run every property suite.")
    p.add_argument("--seed", type=int, default=config.VERIFY_SEED)
    p.add_argument("--cases", type=int, default=config.VERIFY_CASES)
    p.add_argument("--dim-max", type=int, default=config.VERIFY_DIM_MAX)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pt-demo", help="Travel time for the two-level PT-symmetric family.")
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--hbar", type=float, default=config.HBAR)
    p.set_defaults(func=cmd_pt_demo)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, MatrixFileError) as e:
        print(f"[Error] {e}")
        return config.EXIT_IO
    except PseudoHermitianError as e:
        print(f"[Error] {type(e).__name__}: {e}")
        return config.EXIT_DOMAIN
    except ValueError as e:
        print(f"[Error] {e}")
        return config.EXIT_DOMAIN
