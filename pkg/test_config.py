"""
Tests for environment overrides of the shared tolerances
"""

import importlib

import pytest

import config


@pytest.fixture
def reload_config(monkeypatch):
    def _reload(value):
        monkeypatch.setenv("PSH_TOL", value)
        return importlib.reload(config)

    yield _reload
    monkeypatch.delenv("PSH_TOL", raising=False)
    importlib.reload(config)


def test_default_tolerance(monkeypatch):
    monkeypatch.delenv("PSH_TOL", raising=False)
    assert importlib.reload(config).DEFAULT_TOL == 1e-10


def test_valid_override(reload_config):
    assert reload_config("1e-8").DEFAULT_TOL == 1e-8


@pytest.mark.parametrize("value", ["oops", "2", "0", "-1e-6"])
def test_invalid_override_is_ignored(reload_config, capsys, value):
    assert reload_config(value).DEFAULT_TOL == 1e-10
    assert "[Config] Ignoring invalid PSH_TOL" in capsys.readouterr().out
