"""Tests for the Monte Carlo job scheduler."""

import numpy as np
import pytest

from backend.app.errors import DimensionError, InputBasisError
from backend.app.models.estimator import Estimator
from backend.app.scheduler.jobs import (
    RunJob,
    build_jobs,
    check_group_dimensions,
    group_statistics,
    run_benchmark,
    run_single_job,
    summarize,
)
from backend.app.schemas.experiment import ExperimentConfig
from backend.app.schemas.results import RunResult
from backend.app.services.simulation import run_seed


def test_jobs_follow_group_and_run_order(easy_config):
    config = easy_config.model_copy(update={"groups": easy_config.groups * 2})
    jobs = build_jobs(config)
    assert [(j.p, j.run) for j in jobs] == [(3, 0), (3, 1), (3, 0), (3, 1)]
    assert jobs[1].seed == run_seed(easy_config.seed, 3, 1)


def test_groups_must_match_an_explicit_basis():
    config = ExperimentConfig(
        N=200,
        n=20,
        groups=[{"p": 4, "runs": 1}, {"p": 10, "runs": 1}],
        basis={"switch_instants": [50, 100, 150, 200]},
    )
    with pytest.raises(InputBasisError):
        build_jobs(config)


def test_groups_must_match_x_true():
    config = ExperimentConfig(N=60, n=10, groups=[{"p": 3, "runs": 1}], x_true=[1.0, 2.0])
    with pytest.raises(DimensionError):
        check_group_dimensions(config)


def test_custom_matrix_fixes_p(easy_config):
    with pytest.raises(InputBasisError):
        check_group_dimensions(easy_config, np.ones((80, 2)))
    check_group_dimensions(easy_config, np.ones((80, 3)))


def test_single_job_scores_every_estimator(easy_config):
    job = build_jobs(easy_config)[0]
    result = run_single_job(job)
    assert result.ok
    for estimator in Estimator:
        assert result.fit(estimator) <= 1.0
    assert result.iters >= 1
    assert result.wall_ms is None


def test_single_job_records_wall_time_on_request(easy_config):
    config = easy_config.model_copy(update={"record_wall_time": True})
    result = run_single_job(build_jobs(config)[0])
    assert result.wall_ms > 0


def test_failed_job_becomes_a_row(easy_config):
    config = easy_config.model_copy(update={"x_true": [0.0, 0.0, 0.0]})
    result = run_single_job(RunJob(config=config, p=3, run=0, seed=1))
    assert not result.ok
    assert result.status == "failed:DomainError"
    assert result.fit_bkb is None


async def test_benchmark_in_process(easy_config):
    results = await run_benchmark(easy_config, max_workers=1)
    assert [(r.p, r.run) for r in results] == [(3, 0), (3, 1)]


async def test_worker_pool_matches_in_process_results(easy_config):
    serial = await run_benchmark(easy_config, max_workers=1)
    pooled = await run_benchmark(easy_config, max_workers=2)
    assert [r.model_dump() for r in pooled] == [r.model_dump() for r in serial]


def _row(p, run, bkb, nbls, nbkb, status="ok"):
    return RunResult(
        p=p, run=run, seed=run, fit_bkb=bkb, fit_nbls=nbls, fit_nbkb=nbkb, status=status
    )


def test_summaries_skip_failed_runs():
    results = [
        _row(10, 0, 0.5, 0.4, 0.6),
        _row(10, 1, 0.7, 0.5, 0.8),
        RunResult(p=10, run=2, seed=2, status="failed:EstimationError"),
        _row(20, 0, 0.3, 0.2, 0.9),
    ]
    stats = group_statistics(results)
    assert list(stats) == [10, 20]
    assert stats[10][Estimator.B_KB].median == pytest.approx(0.6)
    assert stats[10][Estimator.B_KB].count == 2

    summaries = summarize(results)
    assert summaries[0].failures == 1 and summaries[0].runs == 3
    assert summaries[1].estimators["NB-KB"]["median"] == 0.9


def test_group_without_successful_runs_has_no_statistics():
    results = [RunResult(p=5, run=0, seed=0, status="failed:DomainError")]
    assert group_statistics(results) == {5: {}}
    assert summarize(results)[0].failures == 1
