"""Monte Carlo benchmark jobs: one simulated instance scored by every estimator."""

from __future__ import annotations

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from backend.app.config import settings
from backend.app.errors import DimensionError, InputBasisError
from backend.app.models.estimator import Estimator, RunStatus
from backend.app.schemas.experiment import ExperimentConfig
from backend.app.schemas.results import GroupSummary, RunResult
from backend.app.services.estimators import fir_least_squares, kernel_known_input, run_em
from backend.app.services.metrics import BoxplotSummary, aggregate, fit_score
from backend.app.services.simulation import random_instance, run_seed

logger = logging.getLogger(__name__)

# Lock to prevent overlapping benchmarks in one process
_benchmark_lock = asyncio.Lock()


@dataclass(frozen=True)
class RunJob:
    """Everything a worker process needs to replay one run."""

    config: ExperimentConfig
    p: int
    run: int
    seed: int
    matrix: Optional[np.ndarray] = None


def check_group_dimensions(config: ExperimentConfig, matrix: Optional[np.ndarray] = None) -> None:
    """
    Every group's p must agree with an explicit basis or x_true.

    Raises:
        InputBasisError: the basis section or custom matrix fixes another p
        DimensionError: x_true has another length than a group's p
    """
    fixed = config.basis.fixed_dimension
    if fixed is None and matrix is not None:
        fixed = int(matrix.shape[1])
    for group in config.groups:
        if fixed is not None and group.p != fixed:
            raise InputBasisError(
                f"Group p={group.p} conflicts with the configured basis, which has p={fixed}"
            )
        if config.x_true is not None and group.p != len(config.x_true):
            raise DimensionError(
                f"Group p={group.p} conflicts with x_true, which has {len(config.x_true)} entries"
            )


def build_jobs(config: ExperimentConfig, matrix: Optional[np.ndarray] = None) -> List[RunJob]:
    """Jobs in (group, run) order with seeds derived from the master seed."""
    check_group_dimensions(config, matrix)
    return [
        RunJob(
            config=config,
            p=group.p,
            run=run,
            seed=run_seed(config.seed, group.p, run),
            matrix=matrix,
        )
        for group in config.groups
        for run in range(group.runs)
    ]


def run_single_job(job: RunJob) -> RunResult:
    """
    Simulate one instance and score B-KB, NB-LS and NB-KB on it.

    Any exception becomes a failed row; the batch never aborts.
    """
    config = job.config
    n = config.ir_length
    start = time.perf_counter()
    try:
        instance = random_instance(config, job.p, job.seed, matrix=job.matrix)
        em_settings = config.em_settings(seed=job.seed)

        theta, post, trace = run_em(instance.y, instance.basis.H, em_settings)
        u_hat = instance.basis.input_signal(theta.x)
        fit_bkb = fit_score(u_hat, post.mean_g, instance.u_true, instance.g_true, n)

        ls = fir_least_squares(instance.y, instance.u_true, n)
        fit_nbls = fit_score(instance.u_true, ls.g_hat, instance.u_true, instance.g_true, n)

        kb = kernel_known_input(instance.y, instance.u_true, n, em_settings)
        fit_nbkb = fit_score(instance.u_true, kb.g_hat, instance.u_true, instance.g_true, n)
    except Exception as e:
        logger.warning(
            f"Run p={job.p} run={job.run} seed={job.seed} failed: {type(e).__name__}: {e}"
        )
        return RunResult(
            p=job.p,
            run=job.run,
            seed=job.seed,
            status=f"{RunStatus.FAILED.value}:{type(e).__name__}",
        )

    wall_ms = (time.perf_counter() - start) * 1000.0 if config.record_wall_time else None
    return RunResult(
        p=job.p,
        run=job.run,
        seed=job.seed,
        fit_bkb=fit_bkb.value,
        fit_nbls=fit_nbls.value,
        fit_nbkb=fit_nbkb.value,
        iters=trace.iterations,
        converged=trace.converged,
        wall_ms=wall_ms,
    )


async def run_benchmark(
    config: ExperimentConfig,
    max_workers: Optional[int] = None,
    matrix: Optional[np.ndarray] = None,
) -> List[RunResult]:
    """
    Run every group of the experiment.

    Args:
        config: Groups, protocol sizes, EM settings and master seed
        max_workers: Worker processes; defaults to settings.MAX_WORKERS, 1 runs in-process
        matrix: H for a custom basis

    Returns:
        RunResults in (group, run) order whatever order the workers finish in
    """
    jobs = build_jobs(config, matrix)
    workers = max_workers or settings.MAX_WORKERS
    logger.info(
        f"Starting benchmark: {len(jobs)} runs in {len(config.groups)} groups, "
        f"{workers} worker(s)"
    )

    async with _benchmark_lock:
        if workers <= 1:
            results = []
            for job in jobs:
                if job.run == 0:
                    logger.info(f"Group p={job.p} started")
                results.append(run_single_job(job))
                await asyncio.sleep(0)
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [loop.run_in_executor(pool, run_single_job, job) for job in jobs]
                results = list(await asyncio.gather(*futures))

    failures = sum(not r.ok for r in results)
    logger.info(f"Benchmark completed: {len(results) - failures} ok, {failures} failed")
    return results


def group_statistics(results: List[RunResult]) -> Dict[int, Dict[Estimator, BoxplotSummary]]:
    """Boxplot statistics per group p (first-appearance order) and estimator, over ok runs."""
    by_group: Dict[int, List[RunResult]] = {}
    for result in results:
        by_group.setdefault(result.p, []).append(result)

    stats: Dict[int, Dict[Estimator, BoxplotSummary]] = {}
    for p, rows in by_group.items():
        stats[p] = {}
        for estimator in Estimator:
            values = [r.fit(estimator) for r in rows if r.ok and r.fit(estimator) is not None]
            if values:
                stats[p][estimator] = aggregate(values)
    return stats


def summarize(results: List[RunResult]) -> List[GroupSummary]:
    """Per-group summaries for summary.json and the inspect report."""
    counts: Dict[int, List[RunResult]] = {}
    for result in results:
        counts.setdefault(result.p, []).append(result)

    return [
        GroupSummary(
            p=p,
            runs=len(counts[p]),
            failures=sum(not r.ok for r in counts[p]),
            estimators={e.value: s.to_dict() for e, s in per_estimator.items()},
        )
        for p, per_estimator in group_statistics(results).items()
    ]
