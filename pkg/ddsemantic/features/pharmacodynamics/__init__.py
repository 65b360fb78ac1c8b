from ddsemantic.features.pharmacodynamics.schemas import (
    DoseResponse,
    ViabilityChange,
    ViabilityDelta,
)
from ddsemantic.features.pharmacodynamics.service import (
    delta_viability,
    dose_response,
    internalised_concentration,
    particle_budget,
    viability,
    viability_slope_at_threshold,
)

__all__ = [
    "DoseResponse",
    "ViabilityChange",
    "ViabilityDelta",
    "delta_viability",
    "dose_response",
    "internalised_concentration",
    "particle_budget",
    "viability",
    "viability_slope_at_threshold",
]
