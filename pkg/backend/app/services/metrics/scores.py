"""Output fitting score and scale normalization of blind estimates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from backend.app.errors import DimensionError, DomainError
from backend.app.services.linalg import toeplitz_lift


@dataclass(frozen=True)
class FitScore:
    """1 - ||U_hat g_hat - U g|| / ||U g - mean(U g)||; at most 1."""

    value: float

    def __float__(self) -> float:
        return self.value


@dataclass
class NormalizedPair:
    """(alpha u, g / alpha) with ||g / alpha|| = 1 and a positive peak."""

    g_norm: np.ndarray
    u_norm: np.ndarray
    alpha: float


def fit_score(u_hat, g_hat, u_true, g_true, n: int) -> FitScore:
    """
    Compare the predicted noiseless output with the true one.

    The mean in the denominator is the scalar average of U_true g_true.

    Raises:
        DomainError: the true noiseless output is constant
    """
    g_hat = np.asarray(g_hat, dtype=float)
    g_true = np.asarray(g_true, dtype=float)
    if g_hat.size != n or g_true.size != n:
        raise DimensionError(f"Impulse responses must have length n={n}")
    u_hat = np.asarray(u_hat, dtype=float)
    u_true = np.asarray(u_true, dtype=float)
    if u_hat.shape != u_true.shape:
        raise DimensionError(f"Input shapes differ: {u_hat.shape} vs {u_true.shape}")

    z = toeplitz_lift(u_true, n) @ g_true
    z_hat = toeplitz_lift(u_hat, n) @ g_hat
    spread = float(np.linalg.norm(z - z.mean()))
    if spread == 0.0:
        raise DomainError("True noiseless output is constant; FIT is undefined")
    return FitScore(1.0 - float(np.linalg.norm(z_hat - z)) / spread)


def normalize_pair(u, g) -> NormalizedPair:
    """Rescale (u, g) so g has unit norm and a positive largest-magnitude entry."""
    u = np.asarray(u, dtype=float)
    g = np.asarray(g, dtype=float)
    norm = float(np.linalg.norm(g))
    if norm == 0.0:
        raise DomainError("Cannot normalize a zero impulse response")
    alpha = norm if g[int(np.argmax(np.abs(g)))] > 0 else -norm
    return NormalizedPair(g_norm=g / alpha, u_norm=alpha * u, alpha=alpha)
