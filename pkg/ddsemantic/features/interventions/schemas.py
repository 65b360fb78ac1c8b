"""
Intervention Schemas
Counter-factual intervention specs, sweep curves and semantic results
"""

from enum import Enum
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ddsemantic.core.config import DEFAULT_GRID_POINTS, DEFAULT_INTERVENTION_RANGES
from ddsemantic.features.pharmacodynamics.schemas import ViabilityChange

ParameterName = Literal["lambda", "k_d", "k_f", "k_b", "k_i"]


class GridScale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class InterventionSpec(BaseModel):
    """One alterable DDS parameter scrambled over a grid of values"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    parameter: ParameterName
    range_min: float = Field(..., gt=0)
    range_max: float = Field(..., gt=0)
    grid_points: int = Field(DEFAULT_GRID_POINTS, ge=2)
    scale: GridScale = GridScale.LINEAR

    @model_validator(mode="after")
    def ordered_range(self):
        if not self.range_min < self.range_max:
            raise ValueError("range_min must be smaller than range_max")
        return self

    def grid(self) -> np.ndarray:
        if self.scale is GridScale.LOG:
            values = np.geomspace(self.range_min, self.range_max, self.grid_points)
        else:
            values = np.linspace(self.range_min, self.range_max, self.grid_points)
        # pin the ends exactly
        values[0], values[-1] = self.range_min, self.range_max
        return values


def default_interventions(grid_points: int = DEFAULT_GRID_POINTS) -> Tuple[InterventionSpec, ...]:
    """Default intervention set, one family per alterable parameter"""
    return tuple(
        InterventionSpec(
            parameter=name,
            range_min=low,
            range_max=high,
            grid_points=grid_points,
            scale=GridScale(scale),
        )
        for name, (low, high, scale) in DEFAULT_INTERVENTION_RANGES.items()
    )


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    param_value: float
    p_i_at_tau: float = Field(..., ge=0, le=1)
    mu_p: float = Field(..., ge=0, le=1)
    n_particles: int = Field(..., ge=0)
    c_int: float = Field(..., ge=0)
    viability: float = Field(..., ge=0, le=1)
    capacity_bps: float = Field(..., ge=0)
    delta_v: Optional[float] = None
    change: Optional[ViabilityChange] = None


class SweepCurve(BaseModel):
    """Viability/capacity curve of one intervention family at tau"""

    model_config = ConfigDict(frozen=True)

    spec: InterventionSpec
    points: Tuple[SweepPoint, ...]
    tau: float = Field(..., gt=0)
    baseline_viability: Optional[float] = None

    @field_validator("points")
    @classmethod
    def ordered_by_value(cls, v):
        values = [p.param_value for p in v]
        if values != sorted(values):
            raise ValueError("points must be ordered by param_value")
        return v

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points], dtype=float)


class SemanticResult(BaseModel):
    """S_epsilon(tau) of one intervention family with its critical value"""

    model_config = ConfigDict(frozen=True)

    parameter: ParameterName
    s_epsilon: float = Field(..., ge=0, description="bits/s")
    critical_value: float
    critical_index: int = Field(..., ge=0)
    critical_value_interpolated: Optional[float] = None
    grid_step: float = Field(..., ge=0, description="Uncertainty of the critical value")
    admissible_set_size: int = Field(..., ge=1)
    v_min: float
    epsilon: float
    meaningless_range: Optional[Tuple[float, float]] = None
    meaningless_fraction: float = Field(0.0, ge=0, le=1)


class PooledSemanticResult(BaseModel):
    """S_eps taken over the union of all intervention families"""

    model_config = ConfigDict(frozen=True)

    s_epsilon: float
    parameter: ParameterName
    critical_value: float
    v_min: float
    admissible_set_size: int


class TemporalSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    tau: float
    s_epsilon: float
    critical_value: float
    v_min: float


class ReferenceDeviation(BaseModel):
    """Relative gap between a computed family result and the published one"""

    model_config = ConfigDict(frozen=True)

    parameter: ParameterName
    reference_s_epsilon: float
    reference_critical_value: float
    s_epsilon_rel_error: float
    critical_value_rel_error: float
    within_band: bool
