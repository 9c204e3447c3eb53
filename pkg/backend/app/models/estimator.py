"""Estimator and Monte Carlo run model definitions."""

from __future__ import annotations

from enum import Enum


class Estimator(str, Enum):
    """Impulse-response estimator enumeration."""

    B_KB = "B-KB"  # blind, kernel-based, input coordinates estimated
    NB_LS = "NB-LS"  # known input, FIR least squares
    NB_KB = "NB-KB"  # known input, kernel-based

    @property
    def column(self) -> str:
        """Column name used in results.csv."""
        return "fit_" + self.value.replace("-", "").lower()


class RunStatus(str, Enum):
    """Monte Carlo run status enumeration."""

    OK = "ok"
    FAILED = "failed"
