"""`benchmark`: the Monte Carlo comparison of B-KB, NB-LS and NB-KB."""

from __future__ import annotations

import argparse
import asyncio
import logging

from backend.app.commands.common import basis_matrix, config_dir, load_config, output_dir
from backend.app.db.repositories import RunResultRepository
from backend.app.db.workspace import write_json
from backend.app.scheduler.jobs import group_statistics, run_benchmark, summarize
from backend.app.schemas.results import BenchmarkSummary
from backend.app.services.plotting import plot_group_boxplot, plot_median_vs_p

logger = logging.getLogger(__name__)


def add_parser(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "benchmark",
        parents=[parent],
        help="Run the Monte Carlo benchmark and write results, summary and plots",
    )
    parser.add_argument("--workers", type=int, help="Worker processes (default: MAX_WORKERS)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Write results.csv, summary.json, boxplot_p<p>.svg per group and median_vs_p.svg."""
    config = load_config(args)
    matrix = basis_matrix(config, config_dir(args))
    results = asyncio.run(run_benchmark(config, max_workers=args.workers, matrix=matrix))

    out = output_dir(config)
    RunResultRepository(out).write(results)

    summary = BenchmarkSummary(
        seed=config.seed,
        N=config.num_samples,
        n=config.ir_length,
        noise_ratio=config.noise_ratio,
        groups=summarize(results),
    )
    write_json(out / "summary.json", summary)

    stats = group_statistics(results)
    for p, per_estimator in stats.items():
        plot_group_boxplot(p, per_estimator, out / f"boxplot_p{p}.svg")
    medians = {p: {e: s.median for e, s in per.items()} for p, per in stats.items()}
    plot_median_vs_p(medians, out / "median_vs_p.svg")

    for group in summary.groups:
        logger.info(
            f"p={group.p}: {group.runs} runs, {group.failures} failed, medians "
            + ", ".join(f"{name}={s['median']:.4f}" for name, s in group.estimators.items())
        )
    return 0
