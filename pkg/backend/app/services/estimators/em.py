"""Empirical-Bayes hyperparameter estimation by expectation-maximization.

Each iteration computes the posterior of g at theta_k (E-step) and then
maximizes the expected complete log-likelihood

    Q(theta) = -N/2 log sigma2 - (y^T y + Tr[U^T U S] - 2 y^T U g_hat) / (2 sigma2)
               - 1/2 log det K_beta - 1/2 Tr[K_beta^{-1} S],      S = P + g_hat g_hat^T

which splits into a part in (x, sigma2) and a part in beta. The x part is the
quadratic -1/2 x^T A x + b^T x; A is stored positive definite, i.e. it is the
negative of the matrix usually written for this update.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from backend.app.config import settings as app_settings
from backend.app.errors import (
    ConditioningError,
    DimensionError,
    DomainError,
    EstimationError,
    InputBasisError,
)
from backend.app.schemas.experiment import EMSettings
from backend.app.services.estimators.base import EMTrace, HyperVector, PosteriorSummary
from backend.app.services.estimators.posterior import posterior
from backend.app.services.kernels import BasePrior, tc_logdet_invtrace
from backend.app.services.linalg import column_rank, spd_solve, toeplitz_lift

logger = logging.getLogger(__name__)

EMResult = Tuple[HyperVector, PosteriorSummary, EMTrace]

# starting sigma2 as a fraction of var(y)
INITIAL_NOISE_FRACTION = 0.1
# a start that collapses to u_hat = 0 is retried with its sigma2 scaled by this
COLLAPSE_SHRINK = 1e-4
COLLAPSE_RETRIES = 2


def e_step(
    y,
    H: np.ndarray,
    theta: HyperVector,
    n: int,
    prior: Optional[BasePrior] = None,
) -> PosteriorSummary:
    """Posterior of g at theta, with the input u = H x."""
    u = np.asarray(H, dtype=float) @ theta.x
    return posterior(y, u, n, theta.sigma2, theta.beta, prior=prior)


def middle_matrix(S: np.ndarray, N: int) -> np.ndarray:
    """
    N x N matrix M with u^T M u = Tr[T_n(u)^T T_n(u) S] for every u.

    Column i of T_n(u) is u shifted down by i, so column pair (i, j) adds S[i, j]
    at M[a, a + i - j] for every a with a + i <= N - 1. Along one offset
    d = i - j that is a cumulative sum of a diagonal of S, so R and S kron I_N
    are never built.
    """
    S = np.asarray(S, dtype=float)
    n = S.shape[0]
    if n > N:
        raise DimensionError(f"S has size {n}, larger than N={N}")
    M = np.zeros((N, N))
    a = np.arange(N)
    for d in range(-(n - 1), n):
        i = np.arange(max(d, 0), min(n, n + d))
        cums = np.concatenate(([0.0], np.cumsum(S[i, i - d])))
        rows = a[(a >= max(0, -d)) & (a + d <= N - 1)]
        counts = np.searchsorted(i, N - 1 - rows, side="right")
        M[rows, rows + d] = cums[counts]
    return M


def build_quadratic(
    post: PosteriorSummary,
    H: np.ndarray,
    y,
    n: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Quadratic model of Q in x: A = H^T R^T (S kron I_N) R H and b = H^T T_N(g_hat)^T y.

    Args:
        post: E-step posterior at theta_k
        H: Input basis, N x p
        y: Output samples
        n: Impulse-response length

    Returns:
        (A, b) with A symmetric positive definite for full-rank H
    """
    H = np.asarray(H, dtype=float)
    y = np.asarray(y, dtype=float)
    N = y.size
    if H.ndim != 2 or H.shape[0] != N:
        raise DimensionError(f"H must have {N} rows, got shape {H.shape}")
    if post.mean_g.size != n:
        raise DimensionError(f"Posterior has length {post.mean_g.size}, expected {n}")

    M = middle_matrix(post.second_moment, N)
    A = H.T @ M @ H
    A = 0.5 * (A + A.T)

    g_padded = np.zeros(N)
    g_padded[:n] = post.mean_g
    b = H.T @ (toeplitz_lift(g_padded, N).T @ y)
    return A, b


def update_x(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Maximizer of -1/2 x^T A x + b^T x."""
    try:
        return spd_solve(A, b)
    except ConditioningError as e:
        raise ConditioningError(
            "Quadratic form in x is degenerate: the input basis must have full column rank "
            f"and the posterior covariance must be positive definite ({e.detail})",
            pivot=e.pivot,
        ) from e


def update_sigma2(
    y,
    u_new,
    post: PosteriorSummary,
    n: int,
    floor: float = app_settings.SIGMA2_FLOOR,
) -> float:
    """(||y - U_new g_hat||^2 + Tr[U_new P U_new^T]) / N, floored."""
    y = np.asarray(y, dtype=float)
    U = toeplitz_lift(u_new, n)
    residual = y - U @ post.mean_g
    spread = float(np.sum((U @ post.covariance_P) * U))
    return max((float(residual @ residual) + spread) / y.size, floor)


def beta_objective(beta, S: np.ndarray):
    """log det K_beta + Tr[K_beta^{-1} S]; minimized by the beta update."""
    logdet, invtrace = tc_logdet_invtrace(beta, S)
    return logdet + invtrace


def update_beta(
    post: PosteriorSummary,
    grid_size: int,
    beta_min: float = app_settings.BETA_MIN,
    beta_max: float = app_settings.BETA_MAX,
) -> float:
    """
    Grid minimizer of the beta objective, refined by golden section inside its two grid cells.

    Raises:
        ConditioningError: when the objective is infinite on the whole grid
    """
    if grid_size < 2:
        raise DomainError(f"beta grid needs at least 2 points, got {grid_size}")
    S = post.second_moment
    grid = np.linspace(beta_min, beta_max, grid_size)
    values = beta_objective(grid, S)
    if not np.any(np.isfinite(values)):
        raise ConditioningError("Beta objective is not finite anywhere on the grid")

    k = int(np.argmin(values))
    best_beta, best_value = float(grid[k]), float(values[k])
    interior = 0 < k < grid_size - 1
    if interior and values[k] < values[k - 1] and values[k] < values[k + 1]:
        result = minimize_scalar(
            lambda b: float(beta_objective(b, S)),
            bracket=(grid[k - 1], grid[k], grid[k + 1]),
            method="golden",
        )
        if grid[k - 1] < result.x < grid[k + 1] and result.fun < best_value:
            best_beta = float(result.x)
    return best_beta


def q_function(
    theta: HyperVector,
    post_k: PosteriorSummary,
    y,
    H: np.ndarray,
    n: int,
) -> float:
    """Expected complete log-likelihood Q(theta | theta_k), constants dropped."""
    y = np.asarray(y, dtype=float)
    N = y.size
    U = toeplitz_lift(np.asarray(H, dtype=float) @ theta.x, n)
    S = post_k.second_moment
    data_term = (
        float(y @ y) + float(np.sum((U.T @ U) * S)) - 2.0 * float(y @ (U @ post_k.mean_g))
    )
    logdet, invtrace = tc_logdet_invtrace(theta.beta, S)
    return float(
        -0.5 * N * np.log(theta.sigma2)
        - data_term / (2.0 * theta.sigma2)
        - 0.5 * logdet
        - 0.5 * invtrace
    )


def initial_theta(
    y: np.ndarray,
    p: int,
    rng: np.random.Generator,
    noise_fraction: float = INITIAL_NOISE_FRACTION,
) -> HyperVector:
    """Random start: x ~ N(0, I) * RMS(y), beta ~ U(0.5, 0.95), sigma2 = noise_fraction * var(y)."""
    N = y.size
    scale = float(np.linalg.norm(y)) / np.sqrt(N) or 1.0
    x0 = rng.standard_normal(p) * scale
    beta0 = float(rng.uniform(0.5, 0.95))
    sigma20 = max(float(np.var(y)) * noise_fraction, app_settings.SIGMA2_FLOOR)
    return HyperVector(x=x0, sigma2=sigma20, beta=beta0)


def is_collapsed(y: np.ndarray, H: np.ndarray, theta: HyperVector, post: PosteriorSummary) -> bool:
    """
    True when the fit sits at the trivial point u_hat = 0, g_hat = 0.

    That point is a fixed point of the updates (b = 0 once g_hat = 0), so a run
    that reaches it never leaves.
    """
    predicted = toeplitz_lift(H @ theta.x, post.mean_g.size) @ post.mean_g
    return float(np.linalg.norm(predicted)) <= app_settings.COLLAPSE_TOL * float(np.linalg.norm(y))


def _iterate(
    y: np.ndarray,
    H: np.ndarray,
    theta: HyperVector,
    settings: EMSettings,
    restart: int,
    update_input: bool,
) -> EMResult:
    """EM iterations from one starting point."""
    n = settings.n
    post = e_step(y, H, theta, n)
    trace = EMTrace(restart=restart)
    trace.append(theta, post.log_marginal)

    for k in range(settings.max_iters):
        if update_input:
            A, b = build_quadratic(post, H, y, n)
            x_new = update_x(A, b)
        else:
            x_new = theta.x
        sigma2_new = update_sigma2(y, H @ x_new, post, n)

        S = post.second_moment
        beta_new = update_beta(post, settings.beta_grid_size)
        # generalized EM: never accept a beta that does worse than the current one
        if beta_objective(theta.beta, S) < beta_objective(beta_new, S):
            beta_new = theta.beta

        theta_new = HyperVector(x=x_new, sigma2=sigma2_new, beta=beta_new)
        step = float(np.linalg.norm(theta_new.as_array() - theta.as_array()))
        theta = theta_new
        post = e_step(y, H, theta, n)
        trace.append(theta, post.log_marginal)
        trace.iterations = k + 1
        logger.debug(
            f"restart {restart} iter {k + 1}: sigma2={theta.sigma2:.4g} "
            f"beta={theta.beta:.4f} log_marginal={post.log_marginal:.6f} step={step:.3g}"
        )
        if step < settings.conv_tol:
            trace.converged = True
            break

    if not trace.converged:
        logger.warning(
            f"EM restart {restart} stopped after {settings.max_iters} iterations without converging"
        )
    return theta, post, trace


def _run_restart(
    y: np.ndarray,
    H: np.ndarray,
    settings: EMSettings,
    restart: int,
    x0: Optional[np.ndarray],
    fixed_input: bool,
) -> EMResult:
    """
    One restart; a collapsed run is repeated from the same x and beta with a smaller sigma2.

    Returns the first run that does not collapse, else the collapsed run with
    the highest log marginal likelihood.
    """
    p = H.shape[1]
    attempts = []
    for retry in range(COLLAPSE_RETRIES + 1):
        rng = np.random.default_rng(settings.seed + restart)
        fraction = INITIAL_NOISE_FRACTION * COLLAPSE_SHRINK**retry
        theta0 = initial_theta(y, p, rng, noise_fraction=fraction)
        if x0 is not None and (restart == 0 or fixed_input):
            theta0 = HyperVector(x=x0, sigma2=theta0.sigma2, beta=theta0.beta)

        theta, post, trace = _iterate(
            y, H, theta0, settings, restart, update_input=not fixed_input
        )
        if not is_collapsed(y, H, theta, post):
            return theta, post, trace
        logger.warning(
            f"EM restart {restart} collapsed to u_hat = 0 from sigma2={theta0.sigma2:.3g}"
        )
        attempts.append((theta, post, trace))
    return max(attempts, key=lambda attempt: attempt[1].log_marginal)


def run_em(
    y,
    H: np.ndarray,
    settings: EMSettings,
    x0: Optional[np.ndarray] = None,
    fixed_input: bool = False,
) -> EMResult:
    """
    Estimate theta = [x, sigma2, beta] by EM with several random starts.

    A start that collapses to u_hat = 0 is rerun with a smaller starting sigma2.

    Args:
        y: Output samples y_1..y_N
        H: Known input basis, N x p, full column rank
        settings: Stopping rule, beta grid, restarts, n and master seed
        x0: Starting input coordinates for the first restart
        fixed_input: Keep x at x0 and estimate only sigma2 and beta

    Returns:
        (theta, posterior, trace) of the restart with the highest final marginal likelihood

    Raises:
        InputBasisError: H is rank deficient
        EstimationError: every restart failed numerically
    """
    y = np.asarray(y, dtype=float)
    H = np.asarray(H, dtype=float)
    if y.ndim != 1:
        raise DimensionError(f"y must be a vector, got shape {y.shape}")
    N = y.size
    if H.ndim != 2 or H.shape[0] != N:
        raise DimensionError(f"H must have {N} rows, got shape {H.shape}")
    if settings.n > N:
        raise DimensionError(f"Impulse-response length n={settings.n} exceeds N={N}")
    p = H.shape[1]
    if column_rank(H) < p:
        raise InputBasisError(f"Input basis H ({N}x{p}) does not have full column rank")
    if fixed_input and x0 is None:
        raise DomainError("fixed_input requires x0")

    best: Optional[EMResult] = None
    diagnostics = []
    for restart in range(settings.restarts):
        try:
            result = _run_restart(y, H, settings, restart, x0, fixed_input)
        except (ConditioningError, DomainError, FloatingPointError) as e:
            logger.warning(f"EM restart {restart} failed: {e}")
            diagnostics.append({"restart": restart, "error": type(e).__name__, "detail": str(e)})
            continue

        theta, post, trace = result
        if not np.isfinite(post.log_marginal):
            diagnostics.append(
                {"restart": restart, "error": "NonFinite", "detail": "log marginal is not finite"}
            )
            continue
        logger.info(
            f"EM restart {restart}: log_marginal={post.log_marginal:.6f} "
            f"iterations={trace.iterations} converged={trace.converged}"
        )
        if best is None or post.log_marginal > best[1].log_marginal:
            best = result

    if best is None:
        raise EstimationError(
            f"All {settings.restarts} EM restarts failed numerically", diagnostics=diagnostics
        )
    return best
