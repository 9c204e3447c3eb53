"""Arguments and helpers shared by every subcommand."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Optional

import numpy as np

from backend.app.config import load_experiment_config
from backend.app.db.repositories import read_matrix
from backend.app.db.workspace import get_workspace
from backend.app.models.basis import BasisKind
from backend.app.schemas.experiment import ExperimentConfig

logger = logging.getLogger(__name__)


def common_arguments() -> argparse.ArgumentParser:
    """Parent parser with --config, --seed, --output and --quiet."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", type=Path, help="Experiment file (TOML, or JSON by suffix)")
    parent.add_argument("--seed", type=int, help="Master seed, overrides the config file")
    parent.add_argument("--output", type=Path, help="Output directory, overrides the config file")
    parent.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
    return parent


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Experiment config with CLI overrides applied."""
    return load_experiment_config(
        args.config,
        overrides={"seed": args.seed, "output_dir": args.output},
    )


def basis_matrix(config: ExperimentConfig, base_dir: Optional[Path] = None) -> Optional[np.ndarray]:
    """H of a custom basis, read from basis.matrix_file (relative to the config file)."""
    if config.basis.kind != BasisKind.CUSTOM:
        return None
    path = Path(config.basis.matrix_file)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    return read_matrix(path)


def config_dir(args: argparse.Namespace) -> Optional[Path]:
    return Path(args.config).parent if args.config is not None else None


def output_dir(config: ExperimentConfig) -> Path:
    path = get_workspace(config.output_dir)
    logger.info(f"Writing to {path}")
    return path


def input_dimension(
    config: ExperimentConfig,
    requested: Optional[int] = None,
    matrix: Optional[np.ndarray] = None,
) -> int:
    """p for a single instance: --p, then x_true, then the basis section, then the first group."""
    if requested is not None:
        return requested
    if config.x_true is not None:
        return len(config.x_true)
    if config.basis.fixed_dimension is not None:
        return config.basis.fixed_dimension
    if matrix is not None:
        return int(matrix.shape[1])
    return config.groups[0].p
