"""
Semantic information extraction
S_eps(tau) = min { C_i : V_i <= min V + eps } over the counter-factual interventions
"""

from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ddsemantic.core.exceptions import ParameterError
from ddsemantic.features.interventions.schemas import (
    PooledSemanticResult,
    ReferenceDeviation,
    SemanticResult,
    SweepCurve,
)

# Relative slack on v_min + epsilon for rounding (0.04 + 0.01 vs 0.05)
ADMISSIBLE_RTOL = 1e-12

# Published family results: parameter -> (S_eps in bit/s, critical value)
REFERENCE_RESULTS: Dict[str, Tuple[float, float]] = {
    "lambda": (2.135, 2909.0),
    "k_d": (2.126, 2343.0),
    "k_f": (2.071, 2.9e-14),
    "k_b": (2.077, 6212.0),
    "k_i": (2.072, 3222.0),
}
REFERENCE_BAND = 0.20


def admissible_threshold(v_min: float, epsilon: float) -> float:
    """Largest viability still within epsilon of the best one"""
    threshold = v_min + epsilon
    return threshold + ADMISSIBLE_RTOL * abs(threshold)


def admissible_mask(viabilities: np.ndarray, epsilon: float) -> np.ndarray:
    return viabilities <= admissible_threshold(float(np.min(viabilities)), epsilon)


def _critical_index(
    viabilities: np.ndarray,
    capacities: np.ndarray,
    admissible: np.ndarray,
) -> int:
    s_epsilon = capacities[admissible].min()
    tied = np.flatnonzero(admissible & (capacities == s_epsilon))
    # Least intervention effort: closest to the end where viability is highest
    anchor = viabilities.size - 1 if viabilities[-1] > viabilities[0] else 0
    return int(tied[np.argmin(np.abs(tied - anchor))])


def _interpolate_knee(
    values: np.ndarray,
    viabilities: np.ndarray,
    index: int,
    level: float,
) -> Optional[float]:
    """Parameter value where V crosses `level` next to the critical point"""
    for neighbour in (index - 1, index + 1):
        if 0 <= neighbour < values.size and viabilities[neighbour] > level >= viabilities[index]:
            v0, v1 = viabilities[index], viabilities[neighbour]
            weight = (level - v0) / (v1 - v0)
            return float(values[index] + weight * (values[neighbour] - values[index]))
    return None


def extract_semantic_information(
    curve: SweepCurve,
    epsilon: float,
    interpolate: bool = False,
) -> SemanticResult:
    """S_eps and its critical value for one intervention curve"""
    if not curve.points:
        raise ParameterError("curve", "cannot extract semantic information from an empty curve")
    if epsilon < 0:
        raise ParameterError("epsilon", "must be non-negative")

    values = curve.column("param_value")
    viabilities = curve.column("viability")
    capacities = curve.column("capacity_bps")

    admissible = admissible_mask(viabilities, epsilon)
    v_min = float(viabilities.min())
    index = _critical_index(viabilities, capacities, admissible)
    s_epsilon = float(capacities[index])

    excess = admissible & (capacities > s_epsilon)
    meaningless_range = None
    meaningless_fraction = 0.0
    if excess.any():
        low, high = float(values[excess].min()), float(values[excess].max())
        meaningless_range = (low, high)
        span = curve.spec.range_max - curve.spec.range_min
        meaningless_fraction = min(max((high - low) / span, 0.0), 1.0)

    gaps = np.diff(values)
    neighbours = [gaps[i] for i in (index - 1, index) if 0 <= i < gaps.size]
    grid_step = float(max(neighbours)) if neighbours else 0.0

    interpolated = None
    if interpolate:
        interpolated = _interpolate_knee(values, viabilities, index, v_min + epsilon)

    return SemanticResult(
        parameter=curve.spec.parameter,
        s_epsilon=s_epsilon,
        critical_value=float(values[index]),
        critical_index=index,
        critical_value_interpolated=interpolated,
        grid_step=grid_step,
        admissible_set_size=int(admissible.sum()),
        v_min=v_min,
        epsilon=epsilon,
        meaningless_range=meaningless_range,
        meaningless_fraction=meaningless_fraction,
    )


def extract_pooled_semantic_information(
    curves: Sequence[SweepCurve],
    epsilon: float,
) -> PooledSemanticResult:
    """S_eps with the minimum taken over every family at once"""
    curves = [c for c in curves if c.points]
    if not curves:
        raise ParameterError("curves", "no points to pool")

    viabilities = np.concatenate([c.column("viability") for c in curves])
    capacities = np.concatenate([c.column("capacity_bps") for c in curves])
    values = np.concatenate([c.column("param_value") for c in curves])
    owners = [c.spec.parameter for c in curves for _ in c.points]

    admissible = admissible_mask(viabilities, epsilon)
    candidates = np.flatnonzero(admissible)
    best = int(candidates[np.argmin(capacities[candidates])])
    return PooledSemanticResult(
        s_epsilon=float(capacities[best]),
        parameter=owners[best],
        critical_value=float(values[best]),
        v_min=float(viabilities.min()),
        admissible_set_size=int(admissible.sum()),
    )


def reference_deviation(result: SemanticResult) -> ReferenceDeviation:
    """Compare a family result with the published S_eps and critical value"""
    ref_s, ref_value = REFERENCE_RESULTS[result.parameter]
    s_error = (result.s_epsilon - ref_s) / ref_s
    value_error = (result.critical_value - ref_value) / ref_value
    return ReferenceDeviation(
        parameter=result.parameter,
        reference_s_epsilon=ref_s,
        reference_critical_value=ref_value,
        s_epsilon_rel_error=s_error,
        critical_value_rel_error=value_error,
        within_band=abs(s_error) <= REFERENCE_BAND and abs(value_error) <= REFERENCE_BAND,
    )
