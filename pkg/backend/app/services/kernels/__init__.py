"""Impulse-response prior kernels."""

from backend.app.services.kernels.base import BasePrior, DensePrior
from backend.app.services.kernels.stable_spline import (
    LAMBDA,
    StableSplinePrior,
    build_kernel,
    kernel_logdet_invtrace,
    tc_factor,
    tc_logdet_invtrace,
)

__all__ = [
    "LAMBDA",
    "BasePrior",
    "DensePrior",
    "StableSplinePrior",
    "build_kernel",
    "kernel_logdet_invtrace",
    "tc_factor",
    "tc_logdet_invtrace",
]
