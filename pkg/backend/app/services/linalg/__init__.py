"""Dense linear-algebra primitives and structured operators."""

from backend.app.services.linalg.factor import (
    check_symmetric,
    cholesky_lower,
    column_rank,
    logdet_from_cholesky,
    spd_solve,
)
from backend.app.services.linalg.structured import kron, selection_matrix_R, toeplitz_lift, vec

__all__ = [
    "check_symmetric",
    "cholesky_lower",
    "column_rank",
    "kron",
    "logdet_from_cholesky",
    "selection_matrix_R",
    "spd_solve",
    "toeplitz_lift",
    "vec",
]
