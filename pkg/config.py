"""
Configuration for the Pseudo-Hermitian Quantum Toolkit
Centralized tolerances, thresholds and defaults shared by every module
"""

import os
from dotenv import load_dotenv

# Load environment variables (.env file is optional)
load_dotenv()

# ============ Tolerance Configuration ============
DEFAULT_TOL = 1e-10

_raw_tol = os.getenv("PSH_TOL")
if _raw_tol:
    try:
        _parsed = float(_raw_tol)
        if not (_parsed > 0.0 and _parsed < 1.0):
            raise ValueError(_raw_tol)
        DEFAULT_TOL = _parsed
    except ValueError:
        print(f"[Config] Ignoring invalid PSH_TOL={_raw_tol!r}; using {DEFAULT_TOL:g}")

# ============ Linear Algebra Configuration ============
EIGVEC_COND_MAX = 1e8          # right-eigenvector condition number above this => not diagonalizable
DEGENERACY_GAP = 1e-9          # relative eigenvalue gap treated as degenerate
HERMITIAN_TOL = 1e-12          # relative residual under which eig switches to eigh
BLOCK_GRAM_COND_MAX = 1e12     # degenerate-block Gram matrices worse than this are singular
EXPM_EIG_COND_MAX = 1e6        # above this the exponential switches to scaling-and-squaring

# ============ Pseudo-Hermitian Configuration ============
SPECTRUM_REAL_TOL = 1e-9
PSEUDO_HERMITICITY_TOL = 1e-9
HBAR = 1.0

# ============ State Space Configuration ============
FD_STEP = 1e-5                 # |dpsi| for finite-difference checks of the defining metric
CHART_Z1_MIN = 1e-12           # |z1| / |z| below this leaves the z1 != 0 chart

# ============ Evolution Configuration ============
STEPS_PER_HALF_PERIOD = 1000   # grid points per pi*hbar/gap of evolution time
MIN_STEPS = 2

# ============ Brachistochrone Configuration ============
TRAVEL_TIME_TOL = 1e-8         # geodesic distance accepted as "arrived"
TRAVEL_TIME_GRID = 10_000
TRAVEL_TIME_XTOL = 1e-13       # relative stopping width of the root refinement (accuracy target 1e-10)
TRAVEL_TIME_PEAK_WINDOW = 1e-4 # grid fidelities must come this close to 1 before a peak is refined
T_MAX_BOUND_FACTOR = 4.0
SWEEP_ORBIT_TOL = 1e-6
SWEEP_VIOLATION_TOL = 1e-8
SWEEP_HIST_BINS = 20
SWEEP_SAMPLES = 500
SWEEP_SEED = 2007
ADMISSIBLE_METRIC_DRAWS = 1000

# ============ Verification Configuration ============
VERIFY_SEED = 1234
VERIFY_CASES = 100
VERIFY_DIM_MAX = 6

# Test-only hook: flips the sign of the second term in the metric-tensor components
INJECT_METRIC_SIGN_FAULT = False

# ============ File Configuration ============
DEFAULT_METRIC_FILENAME = "metric.json"
DEFAULT_HERMITIAN_FILENAME = "hermitian.json"
DEFAULT_TRAJECTORY_FILENAME = "trajectory.csv"
TRAJECTORY_COLUMNS = ["t", "speed", "arc_length", "fidelity_to_final"]
SIGNIFICANT_DIGITS = 12

# ============ Exit Codes ============
EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
