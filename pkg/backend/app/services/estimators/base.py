"""Data classes shared by the posterior, EM and baseline estimators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from backend.app.errors import DomainError


@dataclass(frozen=True, eq=False)
class HyperVector:
    """theta = [x^T, sigma2, beta]: input coordinates, noise variance, kernel decay."""

    x: np.ndarray
    sigma2: float
    beta: float

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        object.__setattr__(self, "x", x)
        if x.ndim != 1 or x.size < 1:
            raise DomainError(f"x must be a non-empty vector, got shape {x.shape}")
        if not self.sigma2 > 0.0:
            raise DomainError(f"sigma2 must be positive, got {self.sigma2}")
        if not 0.0 < self.beta < 1.0:
            raise DomainError(f"beta must lie in (0, 1), got {self.beta}")

    @property
    def p(self) -> int:
        return self.x.size

    def as_array(self) -> np.ndarray:
        """Flat [x, sigma2, beta], the vector the stopping rule measures."""
        return np.concatenate([self.x, [self.sigma2, self.beta]])

    def to_dict(self) -> Dict[str, Any]:
        return {"x": self.x.tolist(), "sigma2": float(self.sigma2), "beta": float(self.beta)}


@dataclass
class PosteriorSummary:
    """Gaussian posterior of g given y: mean C y, covariance P, gain C."""

    mean_g: np.ndarray
    covariance_P: np.ndarray
    gain_C: np.ndarray
    log_marginal: Optional[float] = None  # log p(y | theta) at the theta it came from

    @property
    def second_moment(self) -> np.ndarray:
        """S = P + g g^T, the E-step statistic every M-step update consumes."""
        return self.covariance_P + np.outer(self.mean_g, self.mean_g)


@dataclass
class EMTrace:
    """Per-iteration record of one EM run."""

    thetas: List[HyperVector] = field(default_factory=list)
    log_marginals: List[float] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    restart: int = 0

    def append(self, theta: HyperVector, log_marginal: float) -> None:
        self.thetas.append(theta)
        self.log_marginals.append(float(log_marginal))

    def to_rows(self) -> List[Dict[str, Any]]:
        """Rows for trace.csv: iteration, sigma2, beta, log_marginal, x_1..x_p."""
        rows = []
        for k, (theta, lml) in enumerate(zip(self.thetas, self.log_marginals)):
            row: Dict[str, Any] = {
                "iteration": k,
                "sigma2": theta.sigma2,
                "beta": theta.beta,
                "log_marginal": lml,
            }
            for j, xj in enumerate(theta.x, start=1):
                row[f"x_{j}"] = float(xj)
            rows.append(row)
        return rows
