"""Base repository class for CSV files."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from backend.app.errors import DataError


def format_value(value: Any) -> str:
    """Cell text: repr for floats so every value parses back exactly."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    if hasattr(value, "item"):  # numpy scalar
        return format_value(value.item())
    return str(value)


class CsvRepository:
    """Comma-separated file with a header row, UTF-8 and LF line endings."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.is_file()

    def write_rows(self, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Path:
        """Write rows, missing keys as empty cells."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(row.get(column)) for column in columns])
        return self.path

    def read_rows(self) -> Tuple[List[str], List[Dict[str, str]]]:
        """
        Read the header and the rows as strings.

        Raises:
            DataError: the file is missing, undecodable, or has ragged rows
        """
        if not self.exists():
            raise DataError(f"File not found: {self.path}")
        try:
            with self.path.open("r", encoding="utf-8", newline="") as f:
                lines = list(csv.reader(f))
        except (UnicodeDecodeError, csv.Error) as e:
            raise DataError(f"Cannot parse {self.path}: {e}") from e

        lines = [line for line in lines if line]
        if not lines:
            raise DataError(f"{self.path} is empty")
        header = [name.strip() for name in lines[0]]
        rows = []
        for number, line in enumerate(lines[1:], start=2):
            if len(line) != len(header):
                raise DataError(
                    f"{self.path}, line {number}: expected {len(header)} fields, got {len(line)}"
                )
            rows.append(dict(zip(header, (cell.strip() for cell in line))))
        return header, rows
