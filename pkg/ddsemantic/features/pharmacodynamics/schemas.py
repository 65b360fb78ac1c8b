"""
Pharmacodynamics Schemas
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class ViabilityChange(str, Enum):
    """Sign of Delta V = V_actual - V_intervened"""

    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"


class DoseResponse(BaseModel):
    """Internalised dose and resulting target-cell viability at tau"""

    model_config = ConfigDict(frozen=True)

    c_int: float = Field(..., ge=0, description="Internalised concentration, particles/cell")
    viability: float = Field(..., ge=0, le=1)
    n_particles: int = Field(..., ge=0)
    p_i_at_tau: float = Field(..., ge=0, le=1)


class ViabilityDelta(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float
    change: ViabilityChange
