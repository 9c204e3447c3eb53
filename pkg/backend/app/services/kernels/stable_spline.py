"""First-order stable spline (TC) kernel K[i, j] = beta^max(i, j), 1-based indices.

The kernel is the covariance of a reversed random walk: with a_k = beta^k and
increments of variance d_k = a_k - a_{k+1} (a_{n+1} = 0), K = T diag(d) T^T
where T is upper triangular with ones. Hence

    log det K   = sum_k log d_k
    K^{-1}      = D^T diag(1 / d) D,  (D x)_k = x_k - x_{k+1},  (D x)_n = x_n

so the inverse is tridiagonal and Tr[K^{-1} S] needs only three diagonals of S.
"""

from __future__ import annotations

from typing import Tuple, Union

import numpy as np
from scipy.linalg import cho_solve

from backend.app.errors import ConditioningError, DimensionError, DomainError
from backend.app.services.kernels.base import BasePrior
from backend.app.services.linalg import check_symmetric, cholesky_lower, logdet_from_cholesky


# Prior scale; fixed because (alpha u, g / alpha) explain the data equally well
LAMBDA = 1.0


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"Kernel decay beta must lie in (0, 1), got {beta}")
    return beta


def _check_size(n: int) -> int:
    if n < 1:
        raise DimensionError(f"Kernel size must be positive, got {n}")
    return int(n)


def build_kernel(beta: float, n: int) -> np.ndarray:
    """Dense n x n TC kernel."""
    beta = _check_beta(beta)
    n = _check_size(n)
    idx = np.arange(1, n + 1)
    return LAMBDA * beta ** np.maximum.outer(idx, idx)


def tc_log_increments(beta: Union[float, np.ndarray], n: int) -> np.ndarray:
    """log d_k for k = 1..n; one row per beta when beta is an array."""
    betas = np.atleast_1d(np.asarray(beta, dtype=float))
    k = np.arange(1, n + 1)
    not_last = (k < n).astype(float)
    return k[None, :] * np.log(betas)[:, None] + not_last[None, :] * np.log1p(-betas)[:, None]


def tc_factor(beta: float, n: int) -> np.ndarray:
    """Upper-triangular F with F F^T = K_beta, in closed form (never fails to factor)."""
    beta = _check_beta(beta)
    n = _check_size(n)
    sqrt_d = np.exp(0.5 * tc_log_increments(beta, n)[0])
    return np.sqrt(LAMBDA) * np.triu(np.ones((n, n))) * sqrt_d[None, :]


def tc_logdet_invtrace(beta, S: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    log det K_beta and Tr[K_beta^{-1} S] through the tridiagonal inverse.

    Args:
        beta: Scalar or array of decays in (0, 1)
        S: Symmetric PSD n x n matrix

    Returns:
        (logdet, invtrace), arrays shaped like beta; invtrace is inf where 1/d_k overflows
    """
    betas = np.atleast_1d(np.asarray(beta, dtype=float))
    if np.any((betas <= 0.0) | (betas >= 1.0)):
        raise DomainError(f"Kernel decay beta must lie in (0, 1), got {betas}")
    S = np.asarray(S, dtype=float)
    n = S.shape[0]

    diag = np.diagonal(S)
    q = np.empty(n)
    q[:-1] = diag[:-1] - 2.0 * np.diagonal(S, 1) + diag[1:]
    q[-1] = diag[-1]
    q = np.maximum(q, 0.0)  # quadratic forms of a PSD matrix, up to rounding

    log_d = tc_log_increments(betas, n)
    with np.errstate(over="ignore", invalid="ignore"):
        terms = np.where(q[None, :] > 0.0, q[None, :] * np.exp(-log_d), 0.0)
    logdet = log_d.sum(axis=1) + n * np.log(LAMBDA)
    invtrace = terms.sum(axis=1) / LAMBDA
    invtrace[~np.isfinite(invtrace)] = np.inf
    if np.ndim(beta) == 0:
        return logdet[0], invtrace[0]
    return logdet, invtrace


def kernel_logdet_invtrace(beta: float, S: np.ndarray) -> Tuple[float, float]:
    """
    log det K_beta and Tr[K_beta^{-1} S] through a dense Cholesky factor of K_beta.

    Raises:
        ConditioningError: when K_beta cannot be factored at this beta
    """
    beta = _check_beta(beta)
    S = np.asarray(S, dtype=float)
    check_symmetric(S, name="S")
    K = build_kernel(beta, S.shape[0])
    try:
        L = cholesky_lower(K)
    except ConditioningError as e:
        raise ConditioningError(
            f"TC kernel is numerically singular at beta={beta}: {e.detail}",
            pivot=e.pivot,
            beta=beta,
        ) from e
    invtrace = float(np.trace(cho_solve((L, True), S)))
    return logdet_from_cholesky(L), invtrace


class StableSplinePrior(BasePrior):
    """TC prior g ~ N(0, K_beta) with lambda fixed to 1."""

    def __init__(self, beta: float, n: int):
        self.beta = _check_beta(beta)
        self._n = _check_size(n)
        self.lam = LAMBDA

    @property
    def n(self) -> int:
        return self._n

    def matrix(self) -> np.ndarray:
        return build_kernel(self.beta, self._n)

    def factor(self) -> np.ndarray:
        return tc_factor(self.beta, self._n)
