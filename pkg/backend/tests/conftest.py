"""Shared fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from backend.app.schemas.experiment import EMSettings, ExperimentConfig


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def random_spd(rng):
    def make(n: int) -> np.ndarray:
        A = rng.standard_normal((n, n))
        return A @ A.T + n * np.eye(n)

    return make


@pytest.fixture
def em_settings():
    return EMSettings(n=10, seed=0, conv_tol=1e-4, max_iters=200, beta_grid=50, restarts=2)


@pytest.fixture
def easy_config(tmp_path):
    """Small, low-noise experiment used by the end-to-end tests."""
    return ExperimentConfig(
        N=80,
        n=15,
        noise_ratio=100.0,
        groups=[{"p": 3, "runs": 2}],
        seed=7,
        output_dir=tmp_path / "out",
        em={"conv_tol": 1e-4, "max_iters": 150, "beta_grid": 50, "restarts": 2},
        system={"n_zeros": 4, "n_poles": 4, "zero_mag_max": 0.9, "pole_mag_max": 0.8},
    )
