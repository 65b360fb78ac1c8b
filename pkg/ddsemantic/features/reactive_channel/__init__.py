from ddsemantic.features.reactive_channel.oracles import (
    eventual_hit_with_degradation,
    hitting_probability_absorbing,
)
from ddsemantic.features.reactive_channel.schemas import (
    ALTERABLE_PARAMETERS,
    ImpulseResponse,
    SimulationMode,
    SimulationSettings,
    SystemParameters,
)
from ddsemantic.features.reactive_channel.service import (
    binding_probability,
    eventual_probability,
    simulate_impulse,
    step_size_check,
)

__all__ = [
    "ALTERABLE_PARAMETERS",
    "ImpulseResponse",
    "SimulationMode",
    "SimulationSettings",
    "SystemParameters",
    "binding_probability",
    "eventual_hit_with_degradation",
    "eventual_probability",
    "hitting_probability_absorbing",
    "simulate_impulse",
    "step_size_check",
]
