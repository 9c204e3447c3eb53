"""`identify`: blind estimation of g and u from a measured output."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from pydantic import ValidationError

from backend.app.commands.common import basis_matrix, config_dir, load_config, output_dir
from backend.app.db.repositories import CsvRepository, VectorRepository
from backend.app.db.workspace import read_json, write_json
from backend.app.errors import DataError, DimensionError
from backend.app.models.basis import BasisKind
from backend.app.schemas.experiment import BasisConfig
from backend.app.schemas.results import ThetaReport
from backend.app.services.bases import basis_from_config
from backend.app.services.estimators import run_em
from backend.app.services.metrics import normalize_pair

logger = logging.getLogger(__name__)

# exit code when the estimate is written but EM did not meet its stopping rule
NOT_CONVERGED_EXIT_CODE = 3


def add_parser(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "identify",
        parents=[parent],
        help="Estimate the impulse response and input from y.csv",
    )
    parser.add_argument("--data", type=Path, required=True, help="CSV with a single column 'y'")
    parser.add_argument(
        "--instance",
        type=Path,
        help="instance.json from simulate; its basis replaces the config's basis section",
    )
    parser.add_argument("--trace", action="store_true", help="Also write trace.csv")
    parser.set_defaults(handler=run)


def _basis_from_instance(path: Path) -> BasisConfig:
    document = read_json(path)
    basis = document.get("basis", {}) if isinstance(document, dict) else None
    if not isinstance(basis, dict):
        raise DataError(f"{path} has no 'basis' object")
    if basis.get("kind") == BasisKind.CUSTOM.value:
        raise DataError(f"{path} describes a custom basis; pass it with --config instead")
    try:
        return BasisConfig(
            kind=basis.get("kind", BasisKind.PIECEWISE_CONSTANT.value),
            switch_instants=basis.get("switch_instants"),
            frequencies=basis.get("frequencies"),
        )
    except ValidationError as e:
        raise DataError(f"Invalid basis in {path}: {e}") from e


def run(args: argparse.Namespace) -> int:
    """
    Run EM on y with the configured basis and write the normalized estimates.

    Writes g_hat.csv, u_hat.csv, theta.json and, with --trace, trace.csv.
    """
    config = load_config(args)
    y = VectorRepository(args.data, "y").read()
    N, n = y.size, config.ir_length
    if n > N:
        raise DimensionError(f"n={n} exceeds the {N} samples in {args.data}")

    basis_config = _basis_from_instance(args.instance) if args.instance else config.basis
    basis = basis_from_config(basis_config, N, matrix=basis_matrix(config, config_dir(args)))
    logger.info(f"Identifying from {N} samples: n={n}, p={basis.p}, basis={basis.kind.value}")

    theta, post, trace = run_em(y, basis.H, config.em_settings())
    pair = normalize_pair(basis.input_signal(theta.x), post.mean_g)

    out = output_dir(config)
    VectorRepository(out / "g_hat.csv", "g_hat").write(pair.g_norm)
    VectorRepository(out / "u_hat.csv", "u_hat").write(pair.u_norm)
    report = ThetaReport(
        x=theta.x.tolist(),
        sigma2=theta.sigma2,
        beta=theta.beta,
        log_marginal=post.log_marginal,
        iterations=trace.iterations,
        converged=trace.converged,
        restart=trace.restart,
        alpha=pair.alpha,
    )
    write_json(out / "theta.json", report)
    if args.trace:
        rows = trace.to_rows()
        CsvRepository(out / "trace.csv").write_rows(list(rows[0]), rows)

    logger.info(
        f"sigma2={theta.sigma2:.6g} beta={theta.beta:.4f} "
        f"log_marginal={post.log_marginal:.6f} iterations={trace.iterations}"
    )
    if not trace.converged:
        logger.error(
            f"EM did not converge within {config.em.max_iters} iterations; estimates written anyway"
        )
        return NOT_CONVERGED_EXIT_CODE
    return 0
