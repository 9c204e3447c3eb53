"""Symmetric positive definite factorizations and solves."""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_solve, lapack

from backend.app.config import settings
from backend.app.errors import ConditioningError, DimensionError


def check_symmetric(A: np.ndarray, tol: float = settings.SYMMETRY_TOL, name: str = "A") -> None:
    """Raise DimensionError unless A is square and symmetric to a relative tolerance."""
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if np.max(np.abs(A - A.T), initial=0.0) > tol * scale:
        raise DimensionError(f"{name} is not symmetric within {tol}")


def cholesky_lower(A: np.ndarray) -> np.ndarray:
    """
    Lower Cholesky factor of an SPD matrix, no jitter.

    Raises:
        ConditioningError: with the 1-based index of the failing pivot
    """
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise ConditioningError("Matrix has non-finite entries")
    L, info = lapack.dpotrf(A, lower=1, clean=1)
    if info > 0:
        raise ConditioningError(
            f"Matrix is not positive definite (leading minor {info} failed)",
            pivot=int(info),
        )
    if info < 0:
        raise DimensionError(f"Invalid argument {-info} passed to the Cholesky routine")
    return L


def logdet_from_cholesky(L: np.ndarray) -> float:
    """Log determinant from a Cholesky factor."""
    return 2.0 * float(np.sum(np.log(np.diagonal(L))))


def spd_solve(A, B) -> np.ndarray:
    """
    Solve A X = B for symmetric positive definite A.

    Args:
        A: Symmetric positive definite matrix
        B: Right-hand side vector or matrix

    Returns:
        X with the same shape as B
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    check_symmetric(A)
    if B.shape[0] != A.shape[0]:
        raise DimensionError(f"Right-hand side has {B.shape[0]} rows, expected {A.shape[0]}")
    L = cholesky_lower(A)
    return cho_solve((L, True), B)


def column_rank(H: np.ndarray, tol: float = settings.RANK_TOL) -> int:
    """Numerical rank from singular values relative to the largest one."""
    H = np.asarray(H, dtype=float)
    if H.size == 0:
        return 0
    s = np.linalg.svd(H, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))
