"""Random stable discrete-time systems and their impulse responses."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
from scipy.signal import lfilter

from backend.app.errors import DomainError
from backend.app.schemas.experiment import SystemConfig

logger = logging.getLogger(__name__)

# horizon over which the gain is normalized to max |g_t| = 1
NORMALIZATION_HORIZON = 200


@dataclass(frozen=True)
class RandomSystemSpec:
    """Pole/zero counts, magnitude bounds and the seed of one random system."""

    n_zeros: int = 20
    n_poles: int = 20
    zero_mag_max: float = 0.95
    pole_mag_max: float = 0.92
    seed: int = 0

    def __post_init__(self):
        if self.n_zeros < 0 or self.n_poles < 0:
            raise DomainError("Zero and pole counts must be non-negative")
        for name in ("zero_mag_max", "pole_mag_max"):
            value = getattr(self, name)
            if not 0.0 <= value < 1.0:
                raise DomainError(f"{name} must lie in [0, 1), got {value}")

    @classmethod
    def from_config(cls, config: SystemConfig, seed: int) -> "RandomSystemSpec":
        return cls(**config.model_dump(), seed=int(seed))


@dataclass
class TransferFunction:
    """G(q) = q^{-1} num(q^{-1}) / den(q^{-1}); the one-sample delay gives g_0 = 0."""

    num: np.ndarray
    den: np.ndarray
    zeros: np.ndarray
    poles: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num": self.num.tolist(),
            "den": self.den.tolist(),
            "zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "poles": [[float(z.real), float(z.imag)] for z in self.poles],
        }


def _random_roots(count: int, mag_max: float, rng: np.random.Generator) -> np.ndarray:
    """Conjugate pairs, |r| ~ U(0, mag_max) and arg r ~ U(0, pi); odd counts add a real root."""
    pairs = count // 2
    magnitude = rng.uniform(0.0, mag_max, size=pairs)
    phase = rng.uniform(0.0, np.pi, size=pairs)
    upper = magnitude * np.exp(1j * phase)
    roots = [upper, np.conj(upper)]
    if count % 2:
        real = rng.uniform(-mag_max, mag_max, size=1)
        roots.append(real.astype(complex))
    return np.concatenate(roots)


def random_system(spec: RandomSystemSpec) -> TransferFunction:
    """
    Draw a stable, strictly causal rational system.

    Zeros are drawn before poles from default_rng(spec.seed). The numerator is
    scaled so the first NORMALIZATION_HORIZON impulse-response samples peak at 1.

    Args:
        spec: Counts, magnitude bounds and seed

    Returns:
        TransferFunction with real polynomial coefficients in q^{-1}
    """
    rng = np.random.default_rng(spec.seed)
    zeros = _random_roots(spec.n_zeros, spec.zero_mag_max, rng)
    poles = _random_roots(spec.n_poles, spec.pole_mag_max, rng)

    num = np.real(np.poly(zeros)) if zeros.size else np.ones(1)
    den = np.real(np.poly(poles)) if poles.size else np.ones(1)

    g = impulse_response(num, den, NORMALIZATION_HORIZON)
    peak = float(np.max(np.abs(g)))
    if peak > 0.0:
        num = num / peak
    return TransferFunction(num=num, den=den, zeros=zeros, poles=poles)


def impulse_response(num, den, n: int) -> np.ndarray:
    """
    g_1..g_n of q^{-1} num / den, by the difference-equation recursion.

    Raises:
        DomainError: den has a root on or outside the unit circle
    """
    num = np.atleast_1d(np.asarray(num, dtype=float))
    den = np.atleast_1d(np.asarray(den, dtype=float))
    if n < 1:
        raise DomainError(f"Impulse-response length must be >= 1, got {n}")
    if den.size == 0 or den[0] == 0.0:
        raise DomainError("Denominator must have a nonzero leading coefficient")
    if den.size > 1:
        radius = float(np.max(np.abs(np.roots(den))))
        if radius >= 1.0:
            raise DomainError(f"Unstable denominator: pole modulus {radius:.6g} >= 1")

    impulse = np.zeros(n)
    impulse[0] = 1.0
    return lfilter(num, den, impulse)
