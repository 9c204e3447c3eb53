"""Input subspace constructors."""

from backend.app.services.bases.input_bases import (
    InputBasis,
    basis_from_config,
    custom_basis,
    piecewise_constant_basis,
    random_frequencies,
    random_switch_instants,
    sinusoid_basis,
)

__all__ = [
    "InputBasis",
    "basis_from_config",
    "custom_basis",
    "piecewise_constant_basis",
    "random_frequencies",
    "random_switch_instants",
    "sinusoid_basis",
]
