"""File repositories."""

from backend.app.db.repositories.base import CsvRepository, format_value
from backend.app.db.repositories.results_repo import RESULTS_FILE, RunResultRepository
from backend.app.db.repositories.vector_repo import VectorRepository, read_matrix

__all__ = [
    "CsvRepository",
    "RESULTS_FILE",
    "RunResultRepository",
    "VectorRepository",
    "format_value",
    "read_matrix",
]
