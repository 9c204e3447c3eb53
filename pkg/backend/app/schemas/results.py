"""Pydantic schemas for persisted estimates and benchmark results."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from backend.app.models.estimator import Estimator, RunStatus

RESULT_COLUMNS = [
    "p",
    "run",
    "seed",
    Estimator.B_KB.column,
    Estimator.NB_LS.column,
    Estimator.NB_KB.column,
    "iters",
    "converged",
    "wall_ms",
    "status",
]


class RunResult(BaseModel):
    """One Monte Carlo run: a row of results.csv."""

    p: int = Field(..., ge=1)
    run: int = Field(..., ge=0)
    seed: int
    fit_bkb: Optional[float] = Field(None, le=1.0)
    fit_nbls: Optional[float] = Field(None, le=1.0)
    fit_nbkb: Optional[float] = Field(None, le=1.0)
    iters: Optional[int] = None
    converged: Optional[bool] = None
    wall_ms: Optional[float] = None
    status: str = RunStatus.OK.value

    @property
    def ok(self) -> bool:
        return self.status == RunStatus.OK.value

    def fit(self, estimator: Estimator) -> Optional[float]:
        """FIT of one estimator, None for failed runs."""
        return getattr(self, estimator.column)


class ThetaReport(BaseModel):
    """Schema for theta.json written by `identify`."""

    x: List[float]
    sigma2: float
    beta: float
    log_marginal: float
    iterations: int
    converged: bool
    restart: int
    alpha: float  # scale applied by normalization of (u_hat, g_hat)


class InstanceReport(BaseModel):
    """Schema for instance.json written by `simulate`."""

    seed: int
    sigma2_true: float
    noise_ratio: float
    N: int
    n: int
    x_true: List[float]
    basis: Dict[str, Any]
    system: Dict[str, Any]


class GroupSummary(BaseModel):
    """Per-group boxplot statistics for every estimator."""

    p: int
    runs: int
    failures: int
    estimators: Dict[str, Dict[str, Any]]


class BenchmarkSummary(BaseModel):
    """Schema for summary.json written by `benchmark`."""

    seed: int
    N: int
    n: int
    noise_ratio: float
    groups: List[GroupSummary]
