"""`example`: one realization with true and estimated input, impulse response and output."""

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
from backend.app.db.repositories import CsvRepository
from backend.app.services.estimators import run_em
from backend.app.services.linalg import toeplitz_lift
from backend.app.services.metrics import fit_score, normalize_pair
from backend.app.services.plotting import plot_example
from backend.app.services.simulation import random_instance

logger = logging.getLogger(__name__)


def add_parser(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "example",
        parents=[parent],
        help="Identify one simulated instance and plot estimates against the truth",
    )
    parser.add_argument(
        "--p",
        type=int,
        help="Input dimension (default: x_true, the basis section, then the first group)",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Write example.svg with example_input.csv, example_impulse.csv and example_output.csv."""
    config = load_config(args)
    n = config.ir_length
    matrix = basis_matrix(config, config_dir(args))
    p = input_dimension(config, args.p, matrix)
    instance = random_instance(config, p, config.seed, matrix=matrix)

    theta, post, trace = run_em(instance.y, instance.basis.H, config.em_settings())
    u_hat = instance.basis.input_signal(theta.x)
    score = fit_score(u_hat, post.mean_g, instance.u_true, instance.g_true, n)

    truth = normalize_pair(instance.u_true, instance.g_true)
    estimate = normalize_pair(u_hat, post.mean_g)
    series = {
        "u_true": truth.u_norm,
        "u_hat": estimate.u_norm,
        "g_true": truth.g_norm,
        "g_hat": estimate.g_norm,
        "z_true": instance.z,
        "z_hat": toeplitz_lift(u_hat, n) @ post.mean_g,
        "y": instance.y,
    }

    out = output_dir(config)
    for name, columns in (
        ("example_input.csv", ["u_true", "u_hat"]),
        ("example_impulse.csv", ["g_true", "g_hat"]),
        ("example_output.csv", ["z_true", "z_hat", "y"]),
    ):
        length = series[columns[0]].size
        rows = ({c: float(series[c][t]) for c in columns} for t in range(length))
        CsvRepository(out / name).write_rows(columns, rows)
    plot_example(series, out / "example.svg")

    logger.info(
        f"Example p={instance.basis.p}: FIT(B-KB)={score.value:.4f}, "
        f"iterations={trace.iterations}, converged={trace.converged}"
    )
    return 0
