"""
Analytic limiting cases of the reactive channel
Used to validate the simulator in its perfect-absorption configuration
"""

import math

from scipy.special import erfc

from ddsemantic.core.exceptions import ParameterError


def _check_geometry(D: float, a: float, r0: float) -> None:
    if D <= 0:
        raise ParameterError("D", "must be positive")
    if a <= 0:
        raise ParameterError("a", "must be positive")
    if r0 <= a:
        raise ParameterError("r0", "must exceed the receiver radius")


def hitting_probability_absorbing(D: float, a: float, r0: float, t: float) -> float:
    """First-passage probability to a perfectly absorbing sphere by time t"""
    _check_geometry(D, a, r0)
    if t <= 0:
        raise ParameterError("t", "must be positive")
    return (a / r0) * float(erfc((r0 - a) / (2.0 * math.sqrt(D * t))))


def eventual_hit_with_degradation(D: float, a: float, r0: float, k_d: float) -> float:
    """Eventual hitting probability of an absorbing sphere under first-order decay"""
    _check_geometry(D, a, r0)
    if k_d < 0:
        raise ParameterError("k_d", "must be non-negative")
    return (a / r0) * math.exp(-(r0 - a) * math.sqrt(k_d / D))
