"""Seeded Monte Carlo instances: system, input, noiseless and noisy output."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np

from backend.app.errors import DimensionError, DomainError
from backend.app.schemas.experiment import ExperimentConfig
from backend.app.services.bases import InputBasis, basis_from_config
from backend.app.services.linalg import toeplitz_lift
from backend.app.services.simulation.systems import (
    RandomSystemSpec,
    TransferFunction,
    impulse_response,
    random_system,
)

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence]


@dataclass
class SimulatedInstance:
    """One realization y = T_n(H x) g + v."""

    g_true: np.ndarray
    u_true: np.ndarray
    x_true: np.ndarray
    y: np.ndarray
    z: np.ndarray  # noiseless output T_n(u) g
    sigma2_true: float
    basis: InputBasis
    seed: int
    system: Optional[TransferFunction] = None

    @property
    def N(self) -> int:
        return self.y.size

    @property
    def n(self) -> int:
        return self.g_true.size

    def to_dict(self, noise_ratio: float) -> Dict[str, Any]:
        """Fields of instance.json."""
        return {
            "seed": self.seed,
            "sigma2_true": float(self.sigma2_true),
            "noise_ratio": float(noise_ratio),
            "N": self.N,
            "n": self.n,
            "x_true": self.x_true.tolist(),
            "basis": self.basis.to_dict(),
            "system": self.system.to_dict() if self.system is not None else {},
        }


def run_seed(master_seed: int, p: int, run: int) -> int:
    """Seed of run `run` in group `p`, independent of execution order."""
    state = np.random.SeedSequence([int(master_seed), int(p), int(run)]).generate_state(1)
    return int(state[0])


def simulate_instance(
    system: TransferFunction,
    basis: InputBasis,
    x_true,
    noise_ratio: float,
    n: int,
    seed: SeedLike,
) -> SimulatedInstance:
    """
    Drive `system` with u = H x_true and add white Gaussian noise.

    The noise variance is var(z) / noise_ratio with var taken over the N samples
    of the noiseless output z (mean removed, divisor N).

    Raises:
        DomainError: noise_ratio <= 0, or z has zero variance
    """
    if not noise_ratio > 0.0:
        raise DomainError(f"noise_ratio must be positive, got {noise_ratio}")
    x_true = np.atleast_1d(np.asarray(x_true, dtype=float))
    if x_true.size != basis.p:
        raise DimensionError(f"x_true has {x_true.size} entries, basis has p={basis.p}")

    g_true = impulse_response(system.num, system.den, n)
    u_true = basis.input_signal(x_true)
    z = toeplitz_lift(u_true, n) @ g_true
    variance = float(np.var(z))
    if not variance > 0.0:
        raise DomainError("Noiseless output has zero variance; the noise level is undefined")
    sigma2_true = variance / noise_ratio

    rng = np.random.default_rng(seed)
    y = z + np.sqrt(sigma2_true) * rng.standard_normal(z.size)
    if isinstance(seed, np.random.SeedSequence):
        seed_value = int(seed.generate_state(1)[0])
    else:
        seed_value = int(seed)
    return SimulatedInstance(
        g_true=g_true,
        u_true=u_true,
        x_true=x_true,
        y=y,
        z=z,
        sigma2_true=sigma2_true,
        basis=basis,
        seed=seed_value,
        system=system,
    )


def random_instance(
    config: ExperimentConfig,
    p: Optional[int],
    seed: int,
    matrix: Optional[np.ndarray] = None,
) -> SimulatedInstance:
    """
    Full instance from one seed: system, basis, x_true and noise use separate sub-streams.

    Args:
        config: N, n, noise ratio, system and basis sections
        p: Input dimension; must match an explicit basis, None takes the basis as configured
        seed: Run seed
        matrix: H for a custom basis

    Returns:
        SimulatedInstance whose `seed` is `seed`
    """
    system_ss, basis_ss, x_ss, noise_ss = np.random.SeedSequence(int(seed)).spawn(4)

    system_seed = int(system_ss.generate_state(1)[0])
    system = random_system(RandomSystemSpec.from_config(config.system, system_seed))

    basis = basis_from_config(
        config.basis,
        config.num_samples,
        p=p,
        rng=np.random.default_rng(basis_ss),
        matrix=matrix,
    )
    if config.x_true is not None:
        x_true = np.asarray(config.x_true, dtype=float)
    else:
        x_true = np.random.default_rng(x_ss).standard_normal(basis.p)

    instance = simulate_instance(
        system, basis, x_true, config.noise_ratio, config.ir_length, noise_ss
    )
    instance.seed = int(seed)
    return instance
