"""
Export Module for the Pseudo-Hermitian Quantum Toolkit
MatrixFile JSON documents, trajectory CSV files and sweep tables
"""

import json
import math
import os
from typing import Optional, Tuple

import numpy as np
import pandas as pd

import config
from brachistochrone import SweepReport
from evolution import Trajectory
from utils import MatrixFileError

# ==================== MatrixFile ====================

def read_matrix_file(path: str) -> Tuple[np.ndarray, Optional[str]]:
    """
    Parse {"dim": n, "entries": [[[re, im], ...], ...], "label": ...}
    Returns the complex matrix (dim x dim or dim x 1) and the optional label
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise MatrixFileError(f"{path}: not valid JSON ({e})") from e
    except UnicodeDecodeError as e:
        raise MatrixFileError(f"{path}: not UTF-8 text ({e})") from e

    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise MatrixFileError(f"{path}: expected an object with 'dim' and 'entries'")
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MatrixFileError(f"{path}: 'dim' must be a positive integer, got {dim!r}")

    rows = doc["entries"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise MatrixFileError(f"{path}: 'entries' must have {dim} rows")
    width = len(rows[0]) if isinstance(rows[0], list) else -1
    if width not in (dim, 1):
        raise MatrixFileError(f"{path}: rows must have {dim} entries (matrix) or 1 entry (vector)")

    M = np.empty((dim, width), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise MatrixFileError(f"{path}: row {i} has the wrong length")
        for j, pair in enumerate(row):
            M[i, j] = _parse_pair(pair, path, i, j)

    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise MatrixFileError(f"{path}: 'label' must be text")
    return M, label


def _parse_pair(pair, path: str, i: int, j: int) -> complex:
    if not (isinstance(pair, list) and len(pair) == 2):
        raise MatrixFileError(f"{path}: entry ({i}, {j}) must be a [re, im] pair")
    re, im = pair
    for x in (re, im):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise MatrixFileError(f"{path}: entry ({i}, {j}) has a non-finite or non-numeric part")
    return complex(float(re), float(im))


def write_matrix_file(path: str, M, label: Optional[str] = None) -> str:
    """Write a matrix (or 1-D vector as dim x 1) with shortest round-trip floats"""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2 or A.shape[1] not in (A.shape[0], 1):
        raise MatrixFileError(f"cannot store array with shape {A.shape} as a MatrixFile")
    if not np.all(np.isfinite(A)):
        raise MatrixFileError("cannot store non-finite entries")

    doc = {
        "dim": int(A.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }
    if label is not None:
        doc["label"] = label

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
    return path


# ==================== TrajectoryFile ====================

def format_fixed(x: float, digits: Optional[int] = None) -> str:
    """Positional notation with a fixed number of significant digits"""
    digits = digits if digits is not None else config.SIGNIFICANT_DIGITS
    return np.format_float_positional(float(x), precision=digits, unique=False, fractional=False, trim="k")


def trajectory_frame(traj: Trajectory) -> pd.DataFrame:
    """Numeric trajectory table with the TrajectoryFile columns"""
    df = pd.DataFrame({
        "t": traj.times,
        "speed": traj.speeds,
        "arc_length": traj.arc_lengths,
        "fidelity_to_final": traj.fidelity_to_final(),
    })
    return df[config.TRAJECTORY_COLUMNS]


def write_trajectory_file(path: str, traj: Trajectory) -> str:
    df = trajectory_frame(traj)
    formatted = df.apply(lambda col: col.map(format_fixed))
    formatted.to_csv(path, index=False, encoding="utf-8")
    return path


def read_trajectory_file(path: str) -> pd.DataFrame:
    df = pd.read_csv(path)
    missing = [c for c in config.TRAJECTORY_COLUMNS if c not in df.columns]
    if missing:
        raise MatrixFileError(f"{path}: missing trajectory columns {missing}")
    return df


# ==================== Sweep Tables ====================

def write_sweep_table(path: str, report: SweepReport) -> str:
    """Per-sample sweep table (one row per drawn generator)"""
    report.to_frame().to_csv(path, index=False, encoding="utf-8")
    return path
