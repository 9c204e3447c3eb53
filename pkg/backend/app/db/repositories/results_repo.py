"""Monte Carlo results table (results.csv)."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from backend.app.db.repositories.base import CsvRepository
from backend.app.errors import DataError
from backend.app.schemas.results import RESULT_COLUMNS, RunResult

RESULTS_FILE = "results.csv"
REQUIRED_COLUMNS = RESULT_COLUMNS[:6]


def _parse_bool(text: str) -> Optional[bool]:
    if text == "":
        return None
    lowered = text.lower()
    if lowered in ("true", "1"):
        return True
    if lowered in ("false", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


class RunResultRepository(CsvRepository):
    """Reads and writes RunResult rows in RESULT_COLUMNS order."""

    def __init__(self, directory: Path, file_name: str = RESULTS_FILE):
        super().__init__(Path(directory) / file_name)

    def write(self, results: List[RunResult]) -> Path:
        rows = (result.model_dump() for result in results)
        return self.write_rows(RESULT_COLUMNS, rows)

    def read(self) -> List[RunResult]:
        """
        Parse every row into a RunResult.

        Raises:
            DataError: missing columns, no rows, or a cell that does not parse
        """
        header, rows = self.read_rows()
        missing = [column for column in REQUIRED_COLUMNS if column not in header]
        if missing:
            raise DataError(f"{self.path} lacks columns {missing}")
        if not rows:
            raise DataError(f"{self.path} contains no results")

        results = []
        for number, row in enumerate(rows, start=2):
            try:
                results.append(RunResult.model_validate(self._coerce(row)))
            except (ValueError, ValidationError) as e:
                raise DataError(f"{self.path}, line {number}: {e}") from e
        return results

    @staticmethod
    def _coerce(row: Dict[str, str]) -> Dict[str, Any]:
        data: Dict[str, Any] = {}
        for key, text in row.items():
            if key not in RESULT_COLUMNS:
                continue
            if key == "converged":
                data[key] = _parse_bool(text)
            elif key == "status":
                data[key] = text or "ok"
            elif key in ("p", "run", "seed", "iters"):
                data[key] = int(text) if text else None
            else:
                data[key] = float(text) if text else None
        return data
