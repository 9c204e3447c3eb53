"""Tests for random systems and simulated instances."""

import numpy as np
import pytest

from backend.app.errors import DimensionError, DomainError, InputBasisError
from backend.app.schemas.experiment import ExperimentConfig
from backend.app.services.bases import piecewise_constant_basis
from backend.app.services.simulation import (
    RandomSystemSpec,
    impulse_response,
    random_instance,
    random_system,
    run_seed,
    simulate_instance,
)


def test_poles_stay_inside_bound():
    system = random_system(RandomSystemSpec(n_zeros=0, n_poles=2, pole_mag_max=0.92, seed=3))
    assert np.max(np.abs(np.roots(system.den))) <= 0.92 + 1e-12


def test_default_sized_systems_are_stable_and_real():
    for seed in range(20):
        system = random_system(RandomSystemSpec(seed=seed))
        assert system.num.dtype == float and system.den.dtype == float
        assert np.max(np.abs(np.roots(system.den))) < 1.0
        assert np.max(np.abs(system.poles)) <= 0.92
        assert len(system.zeros) == 20 and len(system.poles) == 20


def test_pure_delay_system():
    system = random_system(RandomSystemSpec(n_zeros=0, n_poles=0, seed=1))
    np.testing.assert_allclose(impulse_response(system.num, system.den, 4), [1, 0, 0, 0])


def test_same_seed_same_system():
    first = random_system(RandomSystemSpec(seed=9))
    second = random_system(RandomSystemSpec(seed=9))
    np.testing.assert_array_equal(first.num, second.num)
    np.testing.assert_array_equal(first.den, second.den)


def test_odd_counts_add_real_root():
    system = random_system(RandomSystemSpec(n_zeros=3, n_poles=1, seed=2))
    assert len(system.zeros) == 3 and len(system.poles) == 1
    assert system.poles[0].imag == 0.0


def test_impulse_response_geometric():
    np.testing.assert_allclose(impulse_response([1.0], [1.0, -0.5], 3), [1.0, 0.5, 0.25])


def test_impulse_response_matches_series_expansion(rng):
    system = random_system(RandomSystemSpec(n_zeros=4, n_poles=4, seed=5))
    g = impulse_response(system.num, system.den, 30)
    # long division: den * g = num, coefficient by coefficient
    num = np.zeros(30)
    num[: system.num.size] = system.num
    expected = np.zeros(30)
    for k in range(30):
        acc = num[k]
        for j in range(1, min(k, system.den.size - 1) + 1):
            acc -= system.den[j] * expected[k - j]
        expected[k] = acc / system.den[0]
    np.testing.assert_allclose(g, expected, atol=1e-10)


def test_impulse_response_rejects_unstable_denominator():
    with pytest.raises(DomainError):
        impulse_response([1.0], [1.0, -1.5], 5)


def test_gain_normalization():
    system = random_system(RandomSystemSpec(seed=4))
    g = impulse_response(system.num, system.den, 200)
    assert np.max(np.abs(g)) == pytest.approx(1.0)


def test_impulse_responses_decay():
    head = tail = 0.0
    for seed in range(10):
        system = random_system(RandomSystemSpec(seed=seed))
        g = np.abs(impulse_response(system.num, system.den, 50))
        head += g[:10].sum()
        tail += g[40:].sum()
    assert tail < head


def _system():
    return random_system(RandomSystemSpec(n_zeros=4, n_poles=4, seed=0))


def test_simulate_instance_noise_level():
    basis = piecewise_constant_basis([50, 100, 150, 200])
    ratios = []
    for seed in range(10):
        instance = simulate_instance(_system(), basis, [1.0, -1.0, 2.0, 0.5], 10.0, 50, seed)
        assert instance.sigma2_true == pytest.approx(np.var(instance.z) / 10.0)
        ratios.append(np.var(instance.y - instance.z) / instance.sigma2_true)
    assert 0.8 <= np.mean(ratios) <= 1.2


def test_simulate_instance_almost_noiseless():
    basis = piecewise_constant_basis([20, 40])
    instance = simulate_instance(_system(), basis, [1.0, 2.0], 1e12, 10, seed=1)
    assert np.linalg.norm(instance.y - instance.z) <= 1e-5 * np.linalg.norm(instance.z)


def test_simulate_instance_rejects_zero_input():
    basis = piecewise_constant_basis([20, 40])
    with pytest.raises(DomainError):
        simulate_instance(_system(), basis, [0.0, 0.0], 10.0, 10, seed=1)


def test_simulate_instance_rejects_wrong_x_size():
    basis = piecewise_constant_basis([20, 40])
    with pytest.raises(DimensionError):
        simulate_instance(_system(), basis, [1.0], 10.0, 10, seed=1)


def test_constant_input_instance():
    basis = piecewise_constant_basis([60])
    instance = simulate_instance(_system(), basis, [1.0], 10.0, 20, seed=2)
    assert instance.y.shape == (60,)


def test_random_instance_is_deterministic():
    config = ExperimentConfig(N=60, n=12, groups=[{"p": 4, "runs": 1}])
    first = random_instance(config, 4, seed=123)
    second = random_instance(config, 4, seed=123)
    np.testing.assert_array_equal(first.y, second.y)
    np.testing.assert_array_equal(first.basis.H, second.basis.H)
    assert first.seed == 123
    assert first.basis.p == 4
    assert first.x_true.shape == (4,)


def test_random_instance_takes_p_from_explicit_basis():
    config = ExperimentConfig(
        N=60, n=10, groups=[{"p": 3, "runs": 1}], basis={"switch_instants": [20, 40, 60]}
    )
    instance = random_instance(config, None, seed=5)
    assert instance.basis.p == 3
    np.testing.assert_array_equal(instance.basis.switch_instants, [20, 40, 60])
    with pytest.raises(InputBasisError):
        random_instance(config, 5, seed=5)


def test_run_seeds_differ_between_runs_and_groups():
    seeds = {run_seed(0, p, run) for p in (10, 20) for run in range(50)}
    assert len(seeds) == 100
    assert run_seed(0, 10, 3) == run_seed(0, 10, 3)
