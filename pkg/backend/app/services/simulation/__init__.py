"""Random systems and Monte Carlo instances."""

from backend.app.services.simulation.instances import (
    SimulatedInstance,
    random_instance,
    run_seed,
    simulate_instance,
)
from backend.app.services.simulation.systems import (
    NORMALIZATION_HORIZON,
    RandomSystemSpec,
    TransferFunction,
    impulse_response,
    random_system,
)

__all__ = [
    "NORMALIZATION_HORIZON",
    "RandomSystemSpec",
    "SimulatedInstance",
    "TransferFunction",
    "impulse_response",
    "random_instance",
    "random_system",
    "run_seed",
    "simulate_instance",
]
