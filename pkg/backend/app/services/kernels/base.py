"""Base prior covariance interface."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from backend.app.services.linalg import check_symmetric, cholesky_lower


class BasePrior(ABC):
    """Abstract base class for impulse-response prior covariances."""

    @property
    @abstractmethod
    def n(self) -> int:
        """Impulse-response length."""
        pass

    @abstractmethod
    def matrix(self) -> np.ndarray:
        """Dense n x n covariance."""
        pass

    @abstractmethod
    def factor(self) -> np.ndarray:
        """Square root F with F F^T equal to the covariance."""
        pass


class DensePrior(BasePrior):
    """Arbitrary SPD covariance; lets tests substitute e.g. the identity for the TC kernel."""

    def __init__(self, K: np.ndarray):
        K = np.asarray(K, dtype=float)
        check_symmetric(K, name="prior covariance")
        self._K = K
        self._L = cholesky_lower(K)

    @property
    def n(self) -> int:
        return self._K.shape[0]

    def matrix(self) -> np.ndarray:
        return self._K

    def factor(self) -> np.ndarray:
        return self._L
