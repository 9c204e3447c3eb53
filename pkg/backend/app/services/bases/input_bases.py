"""Known input subspaces u = H x."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from backend.app.config import settings
from backend.app.errors import InputBasisError
from backend.app.models.basis import BasisKind
from backend.app.schemas.experiment import BasisConfig
from backend.app.services.linalg import column_rank

logger = logging.getLogger(__name__)


@dataclass
class InputBasis:
    """Full-column-rank N x p matrix H with the parameters that produced it."""

    H: np.ndarray
    kind: BasisKind
    switch_instants: Optional[List[int]] = None
    frequencies: Optional[List[float]] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.H.shape[0]

    @property
    def p(self) -> int:
        return self.H.shape[1]

    def input_signal(self, x) -> np.ndarray:
        """u = H x."""
        return self.H @ np.asarray(x, dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        """Description for instance.json; custom bases record only their shape."""
        data: Dict[str, Any] = {"kind": self.kind.value, "N": self.N, "p": self.p}
        if self.switch_instants is not None:
            data["switch_instants"] = list(self.switch_instants)
        if self.frequencies is not None:
            data["frequencies"] = list(self.frequencies)
        return {**data, **self.metadata}


def _require_full_rank(H: np.ndarray, what: str) -> None:
    if H.ndim != 2 or H.shape[1] < 1:
        raise InputBasisError(f"{what}: H must be a 2-D matrix with at least one column")
    N, p = H.shape
    if p > N:
        raise InputBasisError(f"{what}: p={p} exceeds N={N}")
    if not np.all(np.isfinite(H)):
        raise InputBasisError(f"{what}: H has non-finite entries")
    rank = column_rank(H, tol=settings.RANK_TOL)
    if rank < p:
        raise InputBasisError(f"{what}: H has rank {rank} < p={p}")


def piecewise_constant_basis(switch_instants: Sequence[int]) -> InputBasis:
    """
    Block-diagonal H = diag(1_{T1}, 1_{T2-T1}, ..., 1_{Tp-Tp-1}); N = T_p.

    Args:
        switch_instants: Strictly increasing T_1 < ... < T_p with T_1 >= 1

    Returns:
        InputBasis whose H x is the staircase input with levels x
    """
    instants = [int(t) for t in switch_instants]
    if not instants:
        raise InputBasisError("At least one switching instant is required")
    if instants[0] < 1:
        raise InputBasisError(f"First switching instant must be >= 1, got {instants[0]}")
    if any(b <= a for a, b in zip(instants, instants[1:])):
        raise InputBasisError(f"Switching instants must be strictly increasing: {instants}")

    N, p = instants[-1], len(instants)
    H = np.zeros((N, p))
    start = 0
    for j, stop in enumerate(instants):
        H[start:stop, j] = 1.0
        start = stop
    _require_full_rank(H, "piecewise-constant basis")
    return InputBasis(H=H, kind=BasisKind.PIECEWISE_CONSTANT, switch_instants=instants)


def sinusoid_basis(frequencies: Sequence[float], N: int) -> InputBasis:
    """
    H[t - 1, j] = sin(t * omega_j) for t = 1..N, so u_{t-1} = sum_j sin(t omega_j) x_j.

    Raises:
        InputBasisError: a frequency gives a zero column, or the columns are dependent
    """
    omegas = [float(w) for w in frequencies]
    if not omegas:
        raise InputBasisError("At least one frequency is required")
    if len(omegas) > N:
        raise InputBasisError(f"p={len(omegas)} frequencies exceed N={N}")
    t = np.arange(1, N + 1)
    H = np.sin(np.outer(t, omegas))
    for j, omega in enumerate(omegas):
        if np.max(np.abs(H[:, j])) <= settings.RANK_TOL:
            raise InputBasisError(f"Frequency {omega} gives an all-zero column (sin(t*w) = 0)")
    _require_full_rank(H, f"sinusoid basis {omegas}")
    return InputBasis(H=H, kind=BasisKind.SINUSOID, frequencies=omegas)


def custom_basis(H) -> InputBasis:
    """Wrap a user-supplied matrix after the rank check."""
    H = np.array(H, dtype=float, ndmin=2)
    _require_full_rank(H, "custom basis")
    return InputBasis(H=H, kind=BasisKind.CUSTOM)


def random_switch_instants(N: int, p: int, rng: np.random.Generator) -> List[int]:
    """p distinct sorted instants ending at N; the first p - 1 drawn uniformly from 1..N-1."""
    if not 1 <= p <= N:
        raise InputBasisError(f"Need 1 <= p <= N, got p={p}, N={N}")
    inner = np.sort(rng.choice(np.arange(1, N), size=p - 1, replace=False)) if p > 1 else []
    return [int(t) for t in inner] + [int(N)]


def random_frequencies(p: int, rng: np.random.Generator) -> List[float]:
    """p distinct frequencies drawn uniformly from (0, pi)."""
    return sorted(float(w) for w in rng.uniform(0.05, np.pi - 0.05, size=p))


def basis_from_config(
    config: BasisConfig,
    N: int,
    p: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    matrix: Optional[np.ndarray] = None,
) -> InputBasis:
    """
    Build the basis a config section describes.

    Explicit instants / frequencies win; otherwise they are drawn with `rng` for p levels.
    A custom basis takes its matrix from `matrix` (already read from basis.matrix_file).

    Raises:
        InputBasisError: `p` is given and the basis the section describes has another size
    """
    basis = _build_basis(config, N, p, rng, matrix)
    if p is not None and basis.p != p:
        raise InputBasisError(
            f"Requested p={p} but the configured {basis.kind.value} basis has p={basis.p}"
        )
    return basis


def _build_basis(
    config: BasisConfig,
    N: int,
    p: Optional[int],
    rng: Optional[np.random.Generator],
    matrix: Optional[np.ndarray],
) -> InputBasis:
    if config.kind == BasisKind.PIECEWISE_CONSTANT:
        instants = config.switch_instants
        if instants is None:
            if p is None or rng is None:
                raise InputBasisError("basis.switch_instants missing and no p/rng to draw them")
            instants = random_switch_instants(N, p, rng)
        if instants[-1] != N:
            raise InputBasisError(f"Last switching instant must equal N={N}, got {instants[-1]}")
        return piecewise_constant_basis(instants)

    if config.kind == BasisKind.SINUSOID:
        frequencies = config.frequencies
        if frequencies is None:
            if p is None or rng is None:
                raise InputBasisError("basis.frequencies missing and no p/rng to draw them")
            frequencies = random_frequencies(p, rng)
        return sinusoid_basis(frequencies, N)

    if matrix is None:
        raise InputBasisError("Custom basis needs its matrix (basis.matrix_file)")
    basis = custom_basis(matrix)
    if basis.N != N:
        raise InputBasisError(f"Custom basis has {basis.N} rows, expected N={N}")
    return basis
