"""Gaussian-regression posterior of the impulse response for fixed hyperparameters.

With K = F F^T the prior factor and W = U F, the information matrix
U^T U / sigma2 + K^{-1} equals F^{-T} B F^{-1} with B = I + W^T W / sigma2, so

    P = F B^{-1} F^T,   C = F B^{-1} W^T / sigma2,   g_hat = C y.

B has eigenvalues >= 1 whatever beta is, so no inverse of the (possibly very
ill-conditioned) kernel is ever formed. The same factor gives the marginal
likelihood: log det Sigma_y = N log sigma2 + log det B, and
y^T Sigma_y^{-1} y = ||y - W w||^2 / sigma2 + ||w||^2 with w = B^{-1} W^T y / sigma2.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.linalg import cho_solve

from backend.app.errors import DimensionError, DomainError
from backend.app.services.estimators.base import PosteriorSummary
from backend.app.services.kernels import BasePrior, StableSplinePrior
from backend.app.services.linalg import cholesky_lower, logdet_from_cholesky, toeplitz_lift

LOG_2PI = float(np.log(2.0 * np.pi))


def posterior(
    y,
    u,
    n: int,
    sigma2: float,
    beta: Optional[float] = None,
    prior: Optional[BasePrior] = None,
) -> PosteriorSummary:
    """
    Posterior mean, covariance and gain of g given y = T_n(u) g + v.

    Args:
        y: Output samples y_1..y_N
        u: Input samples u_0..u_{N-1}
        n: Impulse-response length
        sigma2: Noise variance
        beta: TC kernel decay (ignored when `prior` is given)
        prior: Prior covariance override; production code leaves it None

    Returns:
        PosteriorSummary including log p(y | u, sigma2, beta)
    """
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    if y.ndim != 1 or u.ndim != 1 or y.size != u.size:
        raise DimensionError(f"y and u must be vectors of equal length, got {y.shape}, {u.shape}")
    if not sigma2 > 0.0:
        raise DomainError(f"sigma2 must be positive, got {sigma2}")
    if prior is None:
        if beta is None:
            raise DomainError("beta is required when no prior override is given")
        prior = StableSplinePrior(beta, n)
    if prior.n != n:
        raise DimensionError(f"Prior has size {prior.n}, expected {n}")

    N = y.size
    U = toeplitz_lift(u, n)
    F = prior.factor()
    W = U @ F

    B = np.eye(n) + (W.T @ W) / sigma2
    L_B = cholesky_lower(B)

    w = cho_solve((L_B, True), W.T @ y) / sigma2
    mean_g = F @ w

    P = F @ cho_solve((L_B, True), F.T)
    P = 0.5 * (P + P.T)
    gain_C = F @ cho_solve((L_B, True), W.T) / sigma2

    residual = y - W @ w
    quad = float(residual @ residual) / sigma2 + float(w @ w)
    logdet = N * np.log(sigma2) + logdet_from_cholesky(L_B)
    log_marginal = -0.5 * (N * LOG_2PI + logdet + quad)

    return PosteriorSummary(
        mean_g=mean_g,
        covariance_P=P,
        gain_C=gain_C,
        log_marginal=float(log_marginal),
    )


def log_marginal_likelihood(
    y,
    u,
    n: int,
    sigma2: float,
    beta: Optional[float] = None,
    prior: Optional[BasePrior] = None,
) -> float:
    """log N(y; 0, U K U^T + sigma2 I)."""
    return posterior(y, u, n, sigma2, beta=beta, prior=prior).log_marginal
