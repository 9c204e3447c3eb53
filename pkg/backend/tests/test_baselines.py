"""Tests for the known-input reference estimators."""

import numpy as np
import pytest

from backend.app.models.estimator import Estimator
from backend.app.schemas.experiment import EMSettings, ExperimentConfig
from backend.app.services.estimators import fir_least_squares, kernel_known_input, run_em
from backend.app.services.linalg import toeplitz_lift
from backend.app.services.metrics import fit_score
from backend.app.services.simulation import random_instance


@pytest.fixture
def instance():
    config = ExperimentConfig(N=200, n=50, noise_ratio=10.0, groups=[{"p": 10, "runs": 1}])
    return random_instance(config, 10, seed=42)


@pytest.fixture
def nbkb_settings():
    return EMSettings(n=50, seed=1, conv_tol=1e-4, max_iters=200, beta_grid=100, restarts=1)


def test_least_squares_exact_recovery(rng):
    u = rng.standard_normal(40)
    g = rng.standard_normal(8)
    result = fir_least_squares(toeplitz_lift(u, 8) @ g, u, 8)
    np.testing.assert_allclose(result.g_hat, g, atol=1e-8)
    assert result.method == Estimator.NB_LS


def test_least_squares_with_impulse_input(rng):
    u = np.zeros(12)
    u[0] = 1.0
    y = rng.standard_normal(12)
    np.testing.assert_allclose(fir_least_squares(y, u, 5).g_hat, y[:5], atol=1e-12)


def test_least_squares_residual_is_minimal(instance):
    result = fir_least_squares(instance.y, instance.u_true, 50)
    U = toeplitz_lift(instance.u_true, 50)
    best = np.linalg.norm(instance.y - U @ result.g_hat)
    rng = np.random.default_rng(0)
    for _ in range(100):
        other = result.g_hat + 1e-3 * rng.standard_normal(50)
        assert best <= np.linalg.norm(instance.y - U @ other)


def test_least_squares_rank_deficient_uses_minimum_norm():
    u = np.zeros(10)  # every regressor column is zero
    result = fir_least_squares(np.ones(10), u, 3)
    np.testing.assert_array_equal(result.g_hat, np.zeros(3))
    assert result.metadata["rank"] == 0


def test_least_squares_is_unbiased(instance):
    rng = np.random.default_rng(7)
    estimates = np.array(
        [
            fir_least_squares(
                instance.z + np.sqrt(instance.sigma2_true) * rng.standard_normal(200),
                instance.u_true,
                50,
            ).g_hat
            for _ in range(200)
        ]
    )
    standard_error = estimates.std(axis=0, ddof=1) / np.sqrt(200)
    z = np.abs(estimates.mean(axis=0) - instance.g_true) / standard_error
    # 50 taps at 3 SE: one exceedance is within chance
    assert np.sum(z > 3) <= 1


def test_kernel_known_input_noise_estimate(instance, nbkb_settings):
    result = kernel_known_input(instance.y, instance.u_true, 50, nbkb_settings)
    assert result.method == Estimator.NB_KB
    assert instance.sigma2_true / 2 <= result.hyper.sigma2 <= 2 * instance.sigma2_true
    np.testing.assert_array_equal(result.hyper.x, [1.0])


def test_kernel_known_input_trace_is_monotone(instance, nbkb_settings):
    result = kernel_known_input(instance.y, instance.u_true, 50, nbkb_settings)
    lml = np.array(result.trace.log_marginals)
    assert np.all(np.diff(lml) >= -1e-8 * np.abs(lml[1:]))


def test_kernel_known_input_agrees_with_blind_run_on_true_input(instance, nbkb_settings):
    known = kernel_known_input(instance.y, instance.u_true, 50, nbkb_settings)
    H = instance.u_true[:, None]
    theta, post, _ = run_em(instance.y, H, nbkb_settings, x0=np.ones(1))
    fit_known = fit_score(instance.u_true, known.g_hat, instance.u_true, instance.g_true, 50)
    fit_blind = fit_score(H @ theta.x, post.mean_g, instance.u_true, instance.g_true, 50)
    assert abs(fit_known.value - fit_blind.value) <= 0.02


def test_kernel_known_input_adapts_length(instance, nbkb_settings):
    result = kernel_known_input(instance.y, instance.u_true, 20, nbkb_settings)
    assert result.g_hat.shape == (20,)
    assert result.to_dict()["method"] == "NB-KB"


def test_kernel_beats_least_squares_on_slowly_switching_input(nbkb_settings):
    # two input levels over N=200 leave the 50-tap regression nearly singular
    config = ExperimentConfig(N=200, n=50, noise_ratio=10.0, groups=[{"p": 2, "runs": 1}])
    mse_ls, mse_kb = [], []
    for seed in range(6):
        case = random_instance(config, 2, seed=seed)
        ls = fir_least_squares(case.y, case.u_true, 50)
        kb = kernel_known_input(case.y, case.u_true, 50, nbkb_settings)
        mse_ls.append(np.mean((ls.g_hat - case.g_true) ** 2))
        mse_kb.append(np.mean((kb.g_hat - case.g_true) ** 2))
    assert np.mean(mse_kb) <= 0.5 * np.mean(mse_ls)
