"""Pytest configuration and fixtures.

This module provides common fixtures and configuration for all tests.
"""

from pathlib import Path

import pytest
from click.testing import CliRunner

from acs.fiducial import FiducialSpec, GridFiducial, make_spec
from config import Settings, load_settings


@pytest.fixture(autouse=True)
def testing_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Select the testing configuration for every test."""
    monkeypatch.setenv('ACS_ENV', 'testing')
    monkeypatch.delenv('ACS_OUTPUT_DIR', raising=False)


@pytest.fixture
def settings(tmp_path: Path) -> Settings:
    """Testing settings writing into a temporary directory."""
    return load_settings('testing', output_dir=tmp_path)


@pytest.fixture
def runner() -> CliRunner:
    """A test runner for the Click commands."""
    return CliRunner()


@pytest.fixture(scope='session')
def phi0() -> FiducialSpec:
    """Ground-state fiducial at nu=3, on the scaled point."""
    return make_spec(3.0, 0)


@pytest.fixture(scope='session')
def phi1() -> FiducialSpec:
    """First excited fiducial at nu=3, on the scaled point."""
    return make_spec(3.0, 1)


@pytest.fixture(scope='session')
def rapid_fiducial() -> GridFiducial:
    """The sampled fiducial exp(-(x + 1/x))."""
    return GridFiducial.rapidly_decreasing()
