"""
PIC Information Service
Binomial channel law, its Z-channel reduction and closed-form capacity
"""

import math

import numpy as np
from scipy import stats
from scipy.special import entr, expit

from ddsemantic.core.exceptions import ParameterError
from ddsemantic.features.pic_information.schemas import ChannelPoint, OptimalInput

LN2 = math.log(2.0)


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0 or math.isnan(value):
        raise ParameterError(name, f"{value} is not a probability")


def binary_entropy(q: float) -> float:
    """H2(q) in bits, with 0 log 0 = 0"""
    _check_probability("q", q)
    return float((entr(q) + entr(1.0 - q)) / LN2)


def crossover_probability(p_i: float, n_particles: int) -> float:
    """mu_p = (1 - P_i)^N, evaluated in the log domain"""
    _check_probability("p_i", p_i)
    if n_particles < 0:
        raise ParameterError("n_particles", "must be non-negative")
    if n_particles == 0:
        return 1.0
    if p_i == 1.0:
        return 0.0
    return math.exp(n_particles * math.log1p(-p_i))


def channel_point(p_i: float, n_particles: int, tau: float) -> ChannelPoint:
    return ChannelPoint(p_i=p_i, n_particles=n_particles, tau=tau)


def binomial_output_pmf(p: float, point: ChannelPoint) -> np.ndarray:
    """P(Y = y) for y = 0..N when each of N particles is released w.p. p"""
    _check_probability("p", p)
    support = np.arange(point.n_particles + 1)
    return stats.binom.pmf(support, point.n_particles, p * point.p_i)


def mutual_information_z(p1: float, mu_p: float) -> float:
    """I(X;Y) = H2(p1 (1 - mu_p)) - p1 H2(mu_p), in bits"""
    _check_probability("p1", p1)
    _check_probability("mu_p", mu_p)
    value = binary_entropy(p1 * (1.0 - mu_p)) - p1 * binary_entropy(mu_p)
    return max(value, 0.0)


def mutual_information_derivative(p1: float, mu_p: float) -> float:
    """dI/dp1 of the Z channel"""
    _check_probability("mu_p", mu_p)
    if not 0.0 < p1 <= 1.0:
        raise ParameterError("p1", "derivative defined for p1 in (0, 1]")
    if mu_p == 1.0:
        raise ParameterError("mu_p", "derivative undefined for a useless channel")
    success = p1 * (1.0 - mu_p)
    return (1.0 - mu_p) * math.log2((1.0 - success) / success) - binary_entropy(mu_p)


def optimal_input(mu_p: float, tau: float = 1.0) -> OptimalInput:
    """Capacity-achieving release probability p1* of the Z channel"""
    _check_probability("mu_p", mu_p)
    if mu_p == 1.0:
        raise ParameterError("mu_p", "channel is useless at mu_p = 1; capacity is 0")
    if tau <= 0:
        raise ParameterError("tau", "must be positive")
    exponent = binary_entropy(mu_p) / (1.0 - mu_p)
    # (1 / (1 - mu)) / (1 + 2^x) with 1 / (1 + 2^x) = expit(-x ln 2)
    p1_star = float(expit(-exponent * LN2)) / (1.0 - mu_p)
    bits = mutual_information_z(p1_star, mu_p)
    return OptimalInput(p1_star=p1_star, capacity=bits / tau, mutual_info_bits=bits)


def capacity_closed_form(mu_p: float, tau: float) -> float:
    """Binary-input PIC capacity in bits per second"""
    _check_probability("mu_p", mu_p)
    if tau <= 0:
        raise ParameterError("tau", "must be positive")
    if mu_p == 0.0:
        return 1.0 / tau
    if mu_p == 1.0:
        return 0.0
    # mu^(mu / (1 - mu)) with 0^0 = 1 handled above
    power = math.exp(mu_p / (1.0 - mu_p) * math.log(mu_p))
    return math.log1p((1.0 - mu_p) * power) / LN2 / tau


def capacity_at(p_i: float, n_particles: int, tau: float) -> float:
    """Closed-form capacity straight from the channel parameters"""
    return capacity_closed_form(crossover_probability(p_i, n_particles), tau)
