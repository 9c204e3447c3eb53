"""Structured operators: Toeplitz lift, column-major vec, selection matrix R, Kronecker product.

Math notation is 1-based (row t = 1..N, column i = 1..n, u_0..u_{N-1});
arrays are 0-based, so entry (t, i) of the lift lives at [t - 1, i - 1] and
holds u[t - i]. This is the only place that mapping is written down.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import toeplitz

from backend.app.errors import DimensionError


def _as_vector(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def _check_lift_size(N: int, n: int) -> None:
    if n < 1 or n > N:
        raise DimensionError(f"Toeplitz lift needs 1 <= n <= N, got n={n}, N={N}")


def toeplitz_lift(u, n: int) -> np.ndarray:
    """
    N x n lower-triangular Toeplitz matrix of u, so that T_n(u) g is the convolution of u and g.

    Args:
        u: Sequence u_0..u_{N-1}
        n: Number of columns

    Returns:
        Matrix with entry [t, i] = u[t - i] for t >= i, else 0
    """
    u = _as_vector(u, "u")
    _check_lift_size(u.size, n)
    first_row = np.zeros(n)
    first_row[0] = u[0]
    return toeplitz(u, first_row)


def vec(M) -> np.ndarray:
    """Column-major stacking: index i * N + t holds M[t, i]."""
    return np.asarray(M, dtype=float).reshape(-1, order="F")


def selection_matrix_R(N: int, n: int) -> np.ndarray:  # noqa: N802
    """
    The (N n) x N matrix R with R u = vec(T_n(u)).

    Only small instances need it; production code never materializes R.
    """
    _check_lift_size(N, n)
    R = np.zeros((N * n, N))
    for i in range(n):
        rows = i * N + np.arange(i, N)
        R[rows, np.arange(N - i)] = 1.0
    return R


def kron(A, B) -> np.ndarray:
    """Standard Kronecker product."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    return np.kron(A, B)
