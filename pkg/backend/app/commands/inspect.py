"""`inspect`: per-group table and estimator ordering checks for a results.csv."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Dict, List, Tuple

from backend.app.db.repositories import RunResultRepository
from backend.app.models.estimator import Estimator
from backend.app.scheduler.jobs import group_statistics
from backend.app.services.metrics import BoxplotSummary

logger = logging.getLogger(__name__)

GroupStats = Dict[int, Dict[Estimator, BoxplotSummary]]


def add_parser(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "inspect",
        parents=[parent],
        help="Summarize a results.csv written by benchmark",
    )
    parser.add_argument("results", type=Path, help="Path to results.csv")
    parser.set_defaults(handler=run)


def ordering_checks(stats: GroupStats) -> List[Tuple[str, bool]]:
    """
    Median orderings expected of the three estimators.

    NB-KB >= B-KB in every group, B-KB >= NB-LS for p <= 20, and B-KB degrading
    from the smallest to the largest p. Groups lacking a median are skipped.
    """
    checks: List[Tuple[str, bool]] = []
    medians = {p: {e: s.median for e, s in per.items()} for p, per in stats.items()}

    for p, m in medians.items():
        if Estimator.NB_KB in m and Estimator.B_KB in m:
            passed = m[Estimator.NB_KB] >= m[Estimator.B_KB]
            checks.append((f"p={p}: median NB-KB >= median B-KB", passed))
    for p, m in medians.items():
        if p <= 20 and Estimator.B_KB in m and Estimator.NB_LS in m:
            passed = m[Estimator.B_KB] >= m[Estimator.NB_LS]
            checks.append((f"p={p}: median B-KB >= median NB-LS", passed))

    with_bkb = sorted(p for p, m in medians.items() if Estimator.B_KB in m)
    if len(with_bkb) >= 2:
        low, high = with_bkb[0], with_bkb[-1]
        checks.append(
            (
                f"median B-KB at p={high} < median B-KB at p={low}",
                medians[high][Estimator.B_KB] < medians[low][Estimator.B_KB],
            )
        )
    return checks


def format_report(stats: GroupStats, failures: Dict[int, int]) -> str:
    header = ("p", "estimator", "count", "q1", "median", "q3", "failed")
    widths = (4, 9, 5, 8, 8, 8, 6)
    lines = [" ".join(f"{name:>{width}}" for name, width in zip(header, widths))]
    for p, per_estimator in stats.items():
        for estimator, s in per_estimator.items():
            lines.append(
                f"{p:>4} {estimator.value:>9} {s.count:>5} {s.q1:>8.4f} "
                f"{s.median:>8.4f} {s.q3:>8.4f} {failures.get(p, 0):>6}"
            )
    lines.append("")
    for description, passed in ordering_checks(stats):
        lines.append(f"[{'PASS' if passed else 'FAIL'}] {description}")
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    results = RunResultRepository(args.results.parent, args.results.name).read()
    failures: Dict[int, int] = {}
    for result in results:
        if not result.ok:
            failures[result.p] = failures.get(result.p, 0) + 1

    print(format_report(group_statistics(results), failures))
    logger.info(f"Inspected {len(results)} runs from {args.results}")
    return 0
