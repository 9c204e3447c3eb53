"""Experiment configuration Pydantic schemas."""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from backend.app.models.basis import BasisKind


class GroupSpec(BaseModel):
    """One Monte Carlo group: input dimension and number of runs."""

    model_config = ConfigDict(extra="forbid")

    p: int = Field(..., ge=1)
    runs: int = Field(..., ge=1)


class EMConfig(BaseModel):
    """EM stopping rule, beta grid and multi-start settings (`[em]` section)."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True, frozen=True)

    conv_tol: float = Field(1e-3, gt=0)  # threshold on ||theta_{k+1} - theta_k||_2
    max_iters: int = Field(300, ge=1)
    beta_grid_size: int = Field(100, ge=2, alias="beta_grid")
    restarts: int = Field(4, ge=1)


class EMSettings(EMConfig):
    """EMConfig bound to an impulse-response length and a seed."""

    n: int = Field(..., ge=1)
    seed: int = 0


class SystemConfig(BaseModel):
    """Random pole/zero system generation (`[system]` section)."""

    model_config = ConfigDict(extra="forbid")

    n_zeros: int = Field(20, ge=0)
    n_poles: int = Field(20, ge=0)
    zero_mag_max: float = Field(0.95, ge=0, lt=1)
    pole_mag_max: float = Field(0.92, ge=0, lt=1)


class BasisConfig(BaseModel):
    """Input subspace description (`[basis]` section)."""

    model_config = ConfigDict(extra="forbid")

    kind: BasisKind = BasisKind.PIECEWISE_CONSTANT
    switch_instants: Optional[List[int]] = None
    frequencies: Optional[List[float]] = None
    matrix_file: Optional[Path] = None  # CSV holding H for kind = "custom"

    @model_validator(mode="after")
    def _check_parameters(self) -> "BasisConfig":
        if self.kind == BasisKind.CUSTOM and self.matrix_file is None:
            raise ValueError("basis.kind = 'custom' requires basis.matrix_file")
        return self

    @property
    def fixed_dimension(self) -> Optional[int]:
        """p implied by explicit instants or frequencies, None when they are drawn per run."""
        if self.kind == BasisKind.PIECEWISE_CONSTANT and self.switch_instants is not None:
            return len(self.switch_instants)
        if self.kind == BasisKind.SINUSOID and self.frequencies is not None:
            return len(self.frequencies)
        return None


class ExperimentConfig(BaseModel):
    """Full experiment description shared by simulate, identify, benchmark and example."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    num_samples: int = Field(200, ge=1, alias="N")
    ir_length: int = Field(50, ge=1, alias="n")
    noise_ratio: float = Field(10.0, gt=0)
    groups: List[GroupSpec] = Field(default_factory=lambda: [GroupSpec(p=10, runs=100)])
    seed: int = 0
    output_dir: Path = Path("results")
    record_wall_time: bool = False
    x_true: Optional[List[float]] = None  # explicit input coordinates for simulate

    em: EMConfig = Field(default_factory=EMConfig)
    system: SystemConfig = Field(default_factory=SystemConfig)
    basis: BasisConfig = Field(default_factory=BasisConfig)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ExperimentConfig":
        if self.ir_length > self.num_samples:
            raise ValueError(f"n={self.ir_length} exceeds N={self.num_samples}")
        if not self.groups:
            raise ValueError("at least one group is required")
        for group in self.groups:
            if group.p > self.num_samples:
                raise ValueError(f"group p={group.p} exceeds N={self.num_samples}")
        return self

    def em_settings(self, seed: Optional[int] = None) -> EMSettings:
        """Bind the `[em]` section to this experiment's n and a seed."""
        return EMSettings(
            **self.em.model_dump(by_alias=True),
            n=self.ir_length,
            seed=self.seed if seed is None else seed,
        )
