"""Tests for the TC kernel, its closed-form structure and the prior classes."""

import numpy as np
import pytest

from backend.app.errors import ConditioningError, DimensionError, DomainError
from backend.app.services.kernels import (
    DensePrior,
    StableSplinePrior,
    build_kernel,
    kernel_logdet_invtrace,
    tc_factor,
    tc_logdet_invtrace,
)


def test_build_kernel_examples():
    np.testing.assert_allclose(build_kernel(0.5, 2), [[0.5, 0.25], [0.25, 0.25]])
    np.testing.assert_allclose(build_kernel(0.9, 1), [[0.9]])


def test_build_kernel_is_positive_definite():
    K = build_kernel(0.5, 3)
    np.testing.assert_array_equal(K, K.T)
    assert np.linalg.eigvalsh(K).min() > 0


@pytest.mark.parametrize("beta", [0.0, 1.0, -0.1, 1.5])
def test_build_kernel_rejects_beta_outside_unit_interval(beta):
    with pytest.raises(DomainError):
        build_kernel(beta, 3)


def test_build_kernel_rejects_empty_size():
    with pytest.raises(DimensionError):
        build_kernel(0.5, 0)


def test_logdet_invtrace_scalar_case():
    logdet, invtrace = kernel_logdet_invtrace(0.5, np.array([[2.0]]))
    assert logdet == pytest.approx(np.log(0.5))
    assert invtrace == pytest.approx(4.0)


def test_logdet_invtrace_of_kernel_itself():
    K = build_kernel(0.5, 2)
    logdet, invtrace = kernel_logdet_invtrace(0.5, K)
    assert logdet == pytest.approx(np.linalg.slogdet(K)[1])
    assert invtrace == pytest.approx(2.0)


def test_logdet_invtrace_matches_dense_inverse(rng):
    B = rng.standard_normal((5, 5))
    S = B @ B.T
    K = build_kernel(0.7, 5)
    logdet, invtrace = kernel_logdet_invtrace(0.7, S)
    assert logdet == pytest.approx(np.linalg.slogdet(K)[1], rel=1e-8)
    assert invtrace == pytest.approx(np.trace(np.linalg.inv(K) @ S), rel=1e-8)


@pytest.mark.parametrize("beta", [0.2, 0.3, 0.6, 0.9, 0.97])
def test_closed_form_matches_cholesky_path(rng, beta):
    n = 12
    B = rng.standard_normal((n, n))
    S = B @ B.T
    dense = kernel_logdet_invtrace(beta, S)
    closed = tc_logdet_invtrace(beta, S)
    assert closed[0] == pytest.approx(dense[0], rel=1e-8)
    assert closed[1] == pytest.approx(dense[1], rel=1e-8)


def test_closed_form_evaluates_whole_grid(rng):
    B = rng.standard_normal((6, 6))
    S = B @ B.T
    grid = np.linspace(0.1, 0.9, 9)
    logdets, invtraces = tc_logdet_invtrace(grid, S)
    assert logdets.shape == (9,)
    for beta, logdet, invtrace in zip(grid, logdets, invtraces):
        expected = tc_logdet_invtrace(float(beta), S)
        assert logdet == pytest.approx(expected[0])
        assert invtrace == pytest.approx(expected[1])


def test_tc_factor_reproduces_kernel():
    for beta in (0.2, 0.5, 0.95):
        F = tc_factor(beta, 7)
        np.testing.assert_array_equal(F, np.triu(F))
        np.testing.assert_allclose(F @ F.T, build_kernel(beta, 7), rtol=1e-12, atol=1e-15)


def test_dense_path_names_beta_when_kernel_is_singular():
    S = np.eye(80)
    with pytest.raises(ConditioningError) as excinfo:
        kernel_logdet_invtrace(1e-6, S)
    assert excinfo.value.beta == pytest.approx(1e-6)


def test_stable_spline_prior():
    prior = StableSplinePrior(0.8, 4)
    assert prior.n == 4
    assert prior.lam == 1.0
    np.testing.assert_allclose(prior.factor() @ prior.factor().T, prior.matrix())


def test_dense_prior_factor(random_spd):
    K = random_spd(4)
    prior = DensePrior(K)
    assert prior.n == 4
    np.testing.assert_allclose(prior.factor() @ prior.factor().T, K)


def test_dense_prior_rejects_asymmetric_matrix():
    with pytest.raises(DimensionError):
        DensePrior(np.array([[1.0, 0.5], [0.0, 1.0]]))
