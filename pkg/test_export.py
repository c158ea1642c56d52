"""
Tests for MatrixFile and TrajectoryFile persistence
"""

import json
import math

import numpy as np
import pandas as pd
import pytest

import config
from brachistochrone import antipodal_problem, sweep_hamiltonians
from evolution import path_length
from export import (
    format_fixed,
    read_matrix_file,
    read_trajectory_file,
    write_matrix_file,
    write_sweep_table,
    write_trajectory_file,
)
from pseudoherm import MetricOperator
from statespace import TwoLevelMetricParams
from utils import MatrixFileError


def test_matrix_file_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(0)
    M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    path = str(tmp_path / "m.json")
    write_matrix_file(path, M, "random")
    back, label = read_matrix_file(path)
    np.testing.assert_array_equal(back, M)
    assert label == "random"


def test_vector_is_stored_as_column(tmp_path):
    path = str(tmp_path / "v.json")
    write_matrix_file(path, np.array([1.0, 2.0j]))
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    assert doc["dim"] == 2
    assert doc["entries"] == [[[1.0, 0.0]], [[0.0, 2.0]]]
    back, label = read_matrix_file(path)
    assert back.shape == (2, 1)
    assert label is None


@pytest.mark.parametrize(
    "doc",
    [
        {"entries": [[[1, 0]]]},
        {"dim": 2, "entries": [[[1, 0], [0, 0]]]},
        {"dim": 1, "entries": [[[1]]]},
        {"dim": 1, "entries": [[["a", 0]]]},
        {"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0]]]},
        {"dim": 1, "entries": [[[1, 0]]], "label": 5},
    ],
)
def test_malformed_matrix_files(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(MatrixFileError):
        read_matrix_file(str(path))


def test_non_json_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json", encoding="utf-8")
    with pytest.raises(MatrixFileError):
        read_matrix_file(str(path))


def test_non_utf8_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes(b"\xff\xfe\x00\x01")
    with pytest.raises(MatrixFileError):
        read_matrix_file(str(path))


def test_missing_file_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        read_matrix_file(str(tmp_path / "missing.json"))


def test_format_fixed_uses_significant_digits():
    assert format_fixed(math.pi) == "3.14159265359"
    assert format_fixed(0.001234) == "0.00123400000000"
    assert "e" not in format_fixed(1e-7)


def test_trajectory_file(tmp_path):
    sx = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
    traj = path_length(sx, MetricOperator.identity(2), [1.0, 0.0], math.pi, steps=100)
    path = str(tmp_path / "trajectory.csv")
    write_trajectory_file(path, traj)

    with open(path, encoding="utf-8") as f:
        assert f.readline().strip() == ",".join(config.TRAJECTORY_COLUMNS)
    df = read_trajectory_file(path)
    assert len(df) == 101
    assert df["t"].is_monotonic_increasing
    assert (df["arc_length"].diff().dropna() >= 0).all()
    assert df["arc_length"].iloc[-1] == pytest.approx(math.pi / math.sqrt(2), rel=1e-10)
    assert df["fidelity_to_final"].iloc[-1] == pytest.approx(1.0)


def test_sweep_table(tmp_path):
    p = antipodal_problem(TwoLevelMetricParams(1.0, 0.0, 0.0, 1.0), gap=1.0)
    report = sweep_hamiltonians(p, samples=5, seed=1)
    path = str(tmp_path / "sweep.csv")
    write_sweep_table(path, report)
    df = pd.read_csv(path)
    assert len(df) == 5
    assert {"index", "travel_time", "bound", "accepted"} <= set(df.columns)
