"""Output directories and JSON documents."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

from pydantic import BaseModel

from backend.app.errors import DataError


def get_workspace(path: Path) -> Path:
    """Create the output directory if needed."""
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise DataError(f"Cannot create output directory {path}: {e}") from e
    return path


def write_json(path: Path, document: BaseModel | Dict[str, Any]) -> Path:
    """Write a schema instance or a plain dict as indented UTF-8 JSON with a trailing LF."""
    path = Path(path)
    if isinstance(document, BaseModel):
        text = document.model_dump_json(indent=2)
    else:
        text = json.dumps(document, indent=2)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def read_json(path: Path) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"File not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot parse {path}: {e}") from e
