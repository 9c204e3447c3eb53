"""`simulate`: draw one instance and write its data files."""

from __future__ import annotations

import argparse
import logging

from backend.app.commands.common import (
    basis_matrix,
    config_dir,
    input_dimension,
    load_config,
    output_dir,
)
from backend.app.db.repositories import VectorRepository
from backend.app.db.workspace import write_json
from backend.app.schemas.results import InstanceReport
from backend.app.services.simulation import random_instance

logger = logging.getLogger(__name__)


def add_parser(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "simulate",
        parents=[parent],
        help="Simulate one input/output data set",
    )
    parser.add_argument(
        "--p",
        type=int,
        help="Input dimension (default: x_true, the basis section, then the first group)",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Write y.csv, u_true.csv, g_true.csv and instance.json."""
    config = load_config(args)
    matrix = basis_matrix(config, config_dir(args))
    p = input_dimension(config, args.p, matrix)
    instance = random_instance(config, p, config.seed, matrix=matrix)
    out = output_dir(config)

    VectorRepository(out / "y.csv", "y").write(instance.y)
    VectorRepository(out / "u_true.csv", "u_true").write(instance.u_true)
    VectorRepository(out / "g_true.csv", "g_true").write(instance.g_true)
    report = InstanceReport.model_validate(instance.to_dict(config.noise_ratio))
    write_json(out / "instance.json", report)

    logger.info(
        f"Simulated N={instance.N}, n={instance.n}, p={instance.basis.p}, "
        f"sigma2_true={instance.sigma2_true:.6g}"
    )
    return 0
