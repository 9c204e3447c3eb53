"""Single-column vector files and header-less matrix files."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from backend.app.db.repositories.base import CsvRepository
from backend.app.errors import DataError


class VectorRepository(CsvRepository):
    """A vector stored as one named column (y.csv, g_hat.csv, u_hat.csv, ...)."""

    def __init__(self, path: Path, column: str):
        super().__init__(path)
        self.column = column

    def write(self, vector) -> Path:
        values = np.asarray(vector, dtype=float).ravel()
        return self.write_rows([self.column], ({self.column: float(v)} for v in values))

    def read(self) -> np.ndarray:
        header, rows = self.read_rows()
        if self.column not in header:
            raise DataError(f"{self.path} has no column '{self.column}' (header: {header})")
        if not rows:
            raise DataError(f"{self.path} has a header but no values")
        try:
            values = np.array([float(row[self.column]) for row in rows])
        except ValueError as e:
            raise DataError(f"{self.path}: non-numeric value in column '{self.column}': {e}") from e
        if not np.all(np.isfinite(values)):
            raise DataError(f"{self.path}: column '{self.column}' has non-finite values")
        return values


def read_matrix(path: Path) -> np.ndarray:
    """Comma-separated matrix without a header, one row per line."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"Matrix file not found: {path}")
    try:
        matrix = np.loadtxt(path, delimiter=",", ndmin=2, encoding="utf-8")
    except ValueError as e:
        raise DataError(f"Cannot parse matrix file {path}: {e}") from e
    if matrix.size == 0:
        raise DataError(f"Matrix file {path} is empty")
    return matrix
