"""Known-input reference estimators: FIR least squares and kernel-based with known input."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from scipy.linalg import lstsq

from backend.app.errors import DimensionError
from backend.app.models.estimator import Estimator
from backend.app.schemas.experiment import EMSettings
from backend.app.services.estimators.base import EMTrace, HyperVector
from backend.app.services.estimators.em import run_em
from backend.app.services.linalg import toeplitz_lift

logger = logging.getLogger(__name__)


@dataclass
class BaselineResult:
    """Impulse-response estimate of a non-blind method."""

    g_hat: np.ndarray
    method: Estimator
    hyper: Optional[HyperVector] = None  # sigma2 and beta for NB-KB
    trace: Optional[EMTrace] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"method": self.method.value, "g_hat": self.g_hat.tolist()}
        if self.hyper is not None:
            data["sigma2"] = float(self.hyper.sigma2)
            data["beta"] = float(self.hyper.beta)
        return {**data, **self.metadata}


def fir_least_squares(y, u_true, n: int) -> BaselineResult:
    """
    argmin ||y - T_n(u) g||^2 by an SVD-based solver.

    Rank-deficient regressors fall back to the minimum-norm solution.
    """
    y = np.asarray(y, dtype=float)
    U = toeplitz_lift(u_true, n)
    if U.shape[0] != y.size:
        raise DimensionError(f"u has length {U.shape[0]}, y has length {y.size}")
    g_hat, _, rank, _ = lstsq(U, y, lapack_driver="gelsd")
    if rank < n:
        logger.warning(f"FIR regressor has rank {rank} < n={n}; using the minimum-norm solution")
    return BaselineResult(g_hat=g_hat, method=Estimator.NB_LS, metadata={"rank": int(rank)})


def kernel_known_input(y, u_true, n: int, settings: EMSettings) -> BaselineResult:
    """
    Kernel-based estimate with the input known: the EM loop with x frozen.

    Only sigma2 and beta are updated; the input is u_true itself (H = u_true, x = 1).
    """
    u_true = np.asarray(u_true, dtype=float)
    if settings.n != n:
        settings = settings.model_copy(update={"n": n})
    H = u_true[:, None]
    theta, post, trace = run_em(y, H, settings, x0=np.ones(1), fixed_input=True)
    return BaselineResult(
        g_hat=post.mean_g,
        method=Estimator.NB_KB,
        hyper=theta,
        trace=trace,
        metadata={"log_marginal": post.log_marginal, "iterations": trace.iterations},
    )
