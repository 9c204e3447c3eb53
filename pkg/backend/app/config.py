"""Application configuration using environment variables and experiment files."""

from __future__ import annotations

import json

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError
from pydantic_settings import BaseSettings

from backend.app.errors import DataError
from backend.app.schemas.experiment import ExperimentConfig


class Settings(BaseSettings):
    """Process-wide settings loaded from environment variables."""

    # Logging
    LOG_LEVEL: str = "INFO"

    # Benchmark execution
    MAX_WORKERS: int = 1  # 1 = run Monte Carlo jobs in-process
    DEFAULT_OUTPUT_DIR: str = "results"

    # Numerical guards
    BETA_MIN: float = 1e-4  # open interval (0, 1) for the TC decay
    BETA_MAX: float = 1.0 - 1e-4
    SIGMA2_FLOOR: float = 1e-12
    RANK_TOL: float = 1e-10
    SYMMETRY_TOL: float = 1e-10
    COLLAPSE_TOL: float = 1e-3  # predicted output below this fraction of ||y|| means u_hat = 0

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


# Monte Carlo protocol used when no config file is given
DEFAULT_PROTOCOL: Dict[str, Any] = {
    "N": 200,
    "n": 50,
    "noise_ratio": 10.0,
    "groups": [{"p": p, "runs": 100} for p in (10, 20, 30, 40, 50, 60)],
    "system": {
        "n_zeros": 20,
        "n_poles": 20,
        "zero_mag_max": 0.95,
        "pole_mag_max": 0.92,
    },
    "em": {
        "conv_tol": 1e-3,
        "max_iters": 300,
        "beta_grid": 100,
        "restarts": 4,
    },
    "basis": {"kind": "piecewise-constant"},
}


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()


def load_experiment_config(
    path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Load an experiment description.

    Args:
        path: TOML or JSON file; the reference protocol is used when omitted
        overrides: Top-level keys replacing values from the file (CLI flags)

    Returns:
        Validated ExperimentConfig
    """
    data: Dict[str, Any] = json.loads(json.dumps(DEFAULT_PROTOCOL))
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise DataError(f"Config file not found: {path}")
        try:
            if path.suffix.lower() == ".json":
                loaded = json.loads(path.read_text(encoding="utf-8"))
            else:
                loaded = tomllib.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
            raise DataError(f"Cannot parse config {path}: {e}") from e
        data = _merge_sections(data, loaded)

    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    data.setdefault("output_dir", settings.DEFAULT_OUTPUT_DIR)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise DataError(f"Invalid experiment config: {e}") from e


def _merge_sections(base: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
    """Overlay a parsed file on the defaults; nested tables merge one level deep."""
    merged = dict(base)
    for key, value in loaded.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            section = dict(merged[key])
            # a new basis kind must not inherit the other kind's parameters
            if key == "basis" and "kind" in value:
                section = {}
            section.update(value)
            merged[key] = section
        else:
            merged[key] = value
    return merged
