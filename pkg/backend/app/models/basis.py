"""Input-subspace model definitions."""

from __future__ import annotations

from enum import Enum


class BasisKind(str, Enum):
    """Input basis kind enumeration."""

    PIECEWISE_CONSTANT = "piecewise-constant"  # levels between known switching instants
    SINUSOID = "sinusoid"  # amplitudes of known frequencies
    CUSTOM = "custom"  # user-supplied dense H
