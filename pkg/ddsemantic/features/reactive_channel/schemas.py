"""
Reactive Channel Schemas
Physical parameter set, simulation plumbing and the estimated impulse response
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ddsemantic.core import config as defaults
from ddsemantic.core.exceptions import HorizonError, ParameterError


ALTERABLE_PARAMETERS = ("lambda", "k_d", "k_f", "k_b", "k_i")

# Step indices within this many steps of a requested time count as reached
_STEP_ROUNDING = 1e-9


class SystemParameters(BaseModel):
    """Physical parameter set of the drug delivery scenario"""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    tau: float = Field(defaults.DEFAULT_TAU, gt=0, description="Symbol interval, s")
    lambda_: float = Field(
        defaults.DEFAULT_LAMBDA, gt=0, alias="lambda", description="Release rate, particles/s"
    )
    k_d: float = Field(defaults.DEFAULT_K_D, ge=0, description="Degradation rate, 1/s")
    k_f: float = Field(defaults.DEFAULT_K_F, ge=0, description="Binding rate, m^3/(particle s)")
    k_b: float = Field(defaults.DEFAULT_K_B, ge=0, description="Unbinding rate, 1/s")
    k_i: float = Field(defaults.DEFAULT_K_I, ge=0, description="Internalisation rate, 1/s")
    D: float = Field(defaults.DEFAULT_D, gt=0, description="Diffusion coefficient, m^2/s")
    a: float = Field(defaults.DEFAULT_A, gt=0, description="Receiver radius, m")
    r0: float = Field(defaults.DEFAULT_R0, gt=0, description="Tx-Rx centre distance, m")
    C_th: float = Field(defaults.DEFAULT_C_TH, gt=0, description="Threshold concentration")
    n: float = Field(defaults.DEFAULT_HILL_N, ge=1, description="Hill coefficient")
    epsilon: float = Field(defaults.DEFAULT_EPSILON, ge=0, lt=1, description="Tolerated viability variation")

    @field_validator("tau", "lambda_", "D", "a", "r0", "C_th", "n", "epsilon", "k_d", "k_f", "k_b", "k_i")
    @classmethod
    def finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v

    @model_validator(mode="after")
    def release_outside_receiver(self):
        if self.r0 <= self.a:
            raise ValueError("r0 must exceed the receiver radius a")
        return self

    def value_of(self, parameter: str) -> float:
        """Current value of an alterable parameter by its external name"""
        if parameter not in ALTERABLE_PARAMETERS:
            raise ParameterError(parameter, f"not one of {', '.join(ALTERABLE_PARAMETERS)}")
        return getattr(self, "lambda_" if parameter == "lambda" else parameter)

    def with_values(self, **overrides: Any) -> "SystemParameters":
        """Validated copy with some fields replaced (external names accepted)"""
        data = self.model_dump(by_alias=True)
        data.update(overrides)
        return SystemParameters.model_validate(data)


class SimulationMode(str, Enum):
    REACTIVE = "reactive"
    ABSORBING = "absorbing"


class SimulationSettings(BaseModel):
    """Monte Carlo plumbing for the particle simulation"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dt: float = Field(defaults.DEFAULT_DT, gt=0, description="Time step, s")
    trials: int = Field(defaults.DEFAULT_TRIALS, ge=1)
    seed: int = Field(defaults.DEFAULT_SEED, ge=0, lt=2**64)
    time_grid: Optional[Tuple[float, ...]] = Field(
        None, description="Sample times; None means uniform points on (0, tau]"
    )
    time_points: int = Field(defaults.DEFAULT_TIME_POINTS, ge=1)
    block_size: int = Field(defaults.DEFAULT_BLOCK_SIZE, ge=1)
    mode: SimulationMode = SimulationMode.REACTIVE
    p_bind_warning: float = Field(defaults.settings.P_BIND_WARNING_THRESHOLD, gt=0, le=1)

    @field_validator("time_grid")
    @classmethod
    def strictly_increasing(cls, v):
        if v is None:
            return v
        if len(v) == 0:
            raise ValueError("time_grid must not be empty")
        if v[0] <= 0:
            raise ValueError("time_grid entries must be positive")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("time_grid must be strictly increasing")
        return tuple(float(t) for t in v)

    def resolve_time_grid(self, tau: float) -> np.ndarray:
        """Sample times used for a run of symbol interval `tau`"""
        if self.time_grid is not None:
            grid = np.asarray(self.time_grid, dtype=float)
        else:
            grid = tau * np.arange(1, self.time_points + 1) / self.time_points
        return grid

    def check_against(self, params: SystemParameters) -> None:
        """Cross-model invariants: dt resolution and grid within tau"""
        if self.dt > params.tau / 100 * (1 + 1e-12):
            raise ParameterError("dt", f"{self.dt} exceeds tau/100 = {params.tau / 100}")
        grid = self.resolve_time_grid(params.tau)
        if grid[-1] > params.tau * (1 + 1e-12):
            raise ParameterError("time_grid", f"last entry {grid[-1]} exceeds tau = {params.tau}")


@dataclass(frozen=True)
class ImpulseResponse:
    """Cumulative internalisation probability P_i(t | r0) on a time grid"""

    times: np.ndarray
    p_i: np.ndarray
    stderr: np.ndarray
    trials: int
    dt: float
    horizon: float
    hit_steps: np.ndarray = field(repr=False)
    p_bind: float = 0.0
    diagnostics: Tuple[str, ...] = ()

    def __post_init__(self):
        for array in (self.times, self.p_i, self.stderr, self.hit_steps):
            array.setflags(write=False)

    def probability_at(self, t: float) -> float:
        """Exact fraction of trials internalised by time t"""
        if t <= 0:
            return 0.0
        if t > self.horizon * (1 + 1e-12):
            raise HorizonError(f"t = {t} lies beyond the simulated horizon {self.horizon}")
        limit = math.floor(t / self.dt + _STEP_ROUNDING)
        hits = int(np.searchsorted(self.hit_steps, limit, side="right"))
        return hits / self.trials

    def stderr_at(self, t: float) -> float:
        p = self.probability_at(t)
        return math.sqrt(p * (1.0 - p) / self.trials)
