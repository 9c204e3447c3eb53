"""Error types with the CLI exit codes they map to."""

from __future__ import annotations

from typing import Any, Dict, List, Optional


class BlindIdError(Exception):
    """Base error; `exit_code` plays the role an HTTP status plays for an API."""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(BlindIdError):
    """Invalid command-line usage."""

    exit_code = 1


class DataError(BlindIdError):
    """Unreadable, missing or malformed input files."""

    exit_code = 2


class DimensionError(BlindIdError, ValueError):
    """Array shapes that do not fit together."""

    exit_code = 2


class DomainError(BlindIdError, ValueError):
    """A hyperparameter outside its admissible domain."""

    exit_code = 2


class InputBasisError(BlindIdError, ValueError):
    """Input-subspace matrix that is malformed or not of full column rank."""

    exit_code = 2


class ConditioningError(BlindIdError, ArithmeticError):
    """A factorization failed because a matrix is not (numerically) positive definite."""

    exit_code = 3

    def __init__(
        self,
        detail: str,
        pivot: Optional[int] = None,
        beta: Optional[float] = None,
    ):
        super().__init__(detail)
        self.pivot = pivot
        self.beta = beta


class EstimationError(BlindIdError):
    """Every EM restart failed numerically."""

    exit_code = 3

    def __init__(self, detail: str, diagnostics: Optional[List[Dict[str, Any]]] = None):
        super().__init__(detail)
        self.diagnostics = diagnostics or []
