from ddsemantic.features.interventions.schemas import (
    GridScale,
    InterventionSpec,
    PooledSemanticResult,
    ReferenceDeviation,
    SemanticResult,
    SweepCurve,
    SweepPoint,
    TemporalSample,
    default_interventions,
)
from ddsemantic.features.interventions.semantic import (
    REFERENCE_RESULTS,
    extract_pooled_semantic_information,
    extract_semantic_information,
    reference_deviation,
)
from ddsemantic.features.interventions.service import (
    curve_from_impulses,
    evaluate_point,
    simulate_baseline,
    simulate_family,
    sweep,
    temporal_profile,
)

__all__ = [
    "GridScale",
    "InterventionSpec",
    "PooledSemanticResult",
    "REFERENCE_RESULTS",
    "ReferenceDeviation",
    "SemanticResult",
    "SweepCurve",
    "SweepPoint",
    "TemporalSample",
    "curve_from_impulses",
    "default_interventions",
    "evaluate_point",
    "extract_pooled_semantic_information",
    "extract_semantic_information",
    "reference_deviation",
    "simulate_baseline",
    "simulate_family",
    "sweep",
    "temporal_profile",
]
