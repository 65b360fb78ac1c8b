"""
Pharmacodynamics Service
Particle budget, internalised concentration and Hill-type viability
"""

import math

from ddsemantic.core.config import DEFAULT_EPSILON
from ddsemantic.core.exceptions import ParameterError
from ddsemantic.features.pharmacodynamics.schemas import (
    DoseResponse,
    ViabilityChange,
    ViabilityDelta,
)


def particle_budget(lambda_: float, tau: float) -> int:
    """N(lambda, tau) = floor(lambda tau)"""
    if lambda_ <= 0:
        raise ParameterError("lambda", "must be positive")
    if tau <= 0:
        raise ParameterError("tau", "must be positive")
    product = lambda_ * tau
    # 1000 * 0.02 must give 20, not 19
    return int(math.floor(product + 1e-9 * max(1.0, product)))


def internalised_concentration(p_i: float, n_particles: int) -> float:
    """C_int = P_i N, particles per cell"""
    if not 0.0 <= p_i <= 1.0:
        raise ParameterError("p_i", f"{p_i} is not a probability")
    if n_particles < 0:
        raise ParameterError("n_particles", "must be non-negative")
    return p_i * n_particles


def viability(c_int: float, c_th: float, n: float) -> float:
    """V = 1 / (1 + (C_int / C_th)^n)"""
    if c_int < 0:
        raise ParameterError("c_int", "must be non-negative")
    if c_th <= 0:
        raise ParameterError("C_th", "must be positive")
    if n < 1:
        raise ParameterError("n", "Hill coefficient must be at least 1")
    if c_int == 0:
        return 1.0
    try:
        response = (c_int / c_th) ** n
    except OverflowError:
        return 0.0
    return 1.0 / (1.0 + response)


def viability_slope_at_threshold(c_th: float, n: float) -> float:
    """dV/dC_int at C_int = C_th"""
    if c_th <= 0:
        raise ParameterError("C_th", "must be positive")
    return -n / (4.0 * c_th)


def dose_response(p_i: float, n_particles: int, c_th: float, n: float) -> DoseResponse:
    c_int = internalised_concentration(p_i, n_particles)
    return DoseResponse(
        c_int=c_int,
        viability=viability(c_int, c_th, n),
        n_particles=n_particles,
        p_i_at_tau=p_i,
    )


def delta_viability(
    v_actual: float,
    v_intervened: float,
    epsilon: float = DEFAULT_EPSILON,
) -> ViabilityDelta:
    """Delta V with its sign class; |Delta V| <= epsilon counts as ZERO"""
    for name, value in (("v_actual", v_actual), ("v_intervened", v_intervened)):
        if not 0.0 <= value <= 1.0:
            raise ParameterError(name, f"{value} is not a viability")
    delta = v_actual - v_intervened
    if abs(delta) <= epsilon:
        change = ViabilityChange.ZERO
    elif delta > 0:
        change = ViabilityChange.POSITIVE
    else:
        change = ViabilityChange.NEGATIVE
    return ViabilityDelta(delta=delta, change=change)
