"""Impulse-response estimators: posterior, blind EM and known-input baselines."""

from backend.app.services.estimators.base import EMTrace, HyperVector, PosteriorSummary
from backend.app.services.estimators.baselines import (
    BaselineResult,
    fir_least_squares,
    kernel_known_input,
)
from backend.app.services.estimators.em import (
    beta_objective,
    build_quadratic,
    e_step,
    initial_theta,
    is_collapsed,
    middle_matrix,
    q_function,
    run_em,
    update_beta,
    update_sigma2,
    update_x,
)
from backend.app.services.estimators.posterior import log_marginal_likelihood, posterior

__all__ = [
    "BaselineResult",
    "EMTrace",
    "HyperVector",
    "PosteriorSummary",
    "beta_objective",
    "build_quadratic",
    "e_step",
    "fir_least_squares",
    "initial_theta",
    "is_collapsed",
    "kernel_known_input",
    "log_marginal_likelihood",
    "middle_matrix",
    "posterior",
    "q_function",
    "run_em",
    "update_beta",
    "update_sigma2",
    "update_x",
]
