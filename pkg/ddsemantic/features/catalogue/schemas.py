"""
Catalogue Schemas
Run configuration and the machine-readable results catalogue
"""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ddsemantic.core.config import DEFAULT_TAU_GRID
from ddsemantic.features.interventions.schemas import (
    InterventionSpec,
    PooledSemanticResult,
    ReferenceDeviation,
    SemanticResult,
    SweepCurve,
    TemporalSample,
    default_interventions,
)
from ddsemantic.features.reactive_channel.schemas import SimulationSettings, SystemParameters


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


class TemporalConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    tau_grid: Tuple[float, ...] = DEFAULT_TAU_GRID

    @field_validator("tau_grid")
    @classmethod
    def positive_increasing(cls, v):
        if any(t <= 0 for t in v):
            raise ValueError("tau_grid entries must be positive")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("tau_grid must be strictly increasing")
        return v


class OutputConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    directory: Path = Path("results")
    formats: Tuple[OutputFormat, ...] = (OutputFormat.CSV, OutputFormat.JSON, OutputFormat.SVG)
    interpolate_critical: bool = False


class RunConfig(BaseModel):
    """Everything a catalogue run depends on"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    system: SystemParameters = Field(default_factory=SystemParameters)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)
    interventions: Tuple[InterventionSpec, ...] = Field(default_factory=default_interventions)
    temporal: TemporalConfig = Field(default_factory=TemporalConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @field_validator("interventions")
    @classmethod
    def one_spec_per_parameter(cls, v):
        names = [spec.parameter for spec in v]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate interventions for: {', '.join(duplicates)}")
        return v

    def with_seed(self, seed: Optional[int]) -> "RunConfig":
        if seed is None:
            return self
        simulation = SimulationSettings.model_validate(
            {**self.simulation.model_dump(), "seed": seed}
        )
        return self.model_copy(update={"simulation": simulation})

    def with_output(self, directory: Optional[Path], formats: Optional[List[OutputFormat]]) -> "RunConfig":
        update: Dict[str, Any] = {}
        if directory is not None:
            update["directory"] = directory
        if formats:
            update["formats"] = tuple(formats)
        if not update:
            return self
        return self.model_copy(update={"output": self.output.model_copy(update=update)})


class CatalogueEntry(BaseModel):
    """One intervention family: spec echo, full curve and S_eps result"""

    spec: InterventionSpec
    curve: SweepCurve
    result: SemanticResult
    reference: Optional[ReferenceDeviation] = None


class RunMetadata(BaseModel):
    seed: int
    versions: Dict[str, str]
    config: Dict[str, Any]
    baseline_viability: float
    baseline_p_i: float
    diagnostics: List[str] = Field(default_factory=list)
    # Run-dependent fields; everything else is reproducible from the seed
    started_at: Optional[str] = None
    elapsed_seconds: Optional[float] = None


class SemanticCatalogue(BaseModel):
    entries: List[CatalogueEntry]
    temporal: Dict[str, List[TemporalSample]] = Field(default_factory=dict)
    pooled: Optional[PooledSemanticResult] = None
    metadata: RunMetadata

    def entry(self, parameter: str) -> CatalogueEntry:
        for item in self.entries:
            if item.spec.parameter == parameter:
                return item
        raise KeyError(parameter)
