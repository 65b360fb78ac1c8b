"""
Exhaustive oracles for the binary-input PIC
Work on the full output alphabet {0..N} instead of the Z-channel reduction
"""

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import entr

from ddsemantic.core.exceptions import ParameterError
from ddsemantic.features.pic_information.schemas import ChannelPoint
from ddsemantic.features.pic_information.service import (
    LN2,
    _check_probability,
    binomial_output_pmf,
    mutual_information_z,
)

MAX_BRUTEFORCE_PARTICLES = 64
GRID_STEP = 1e-5


def _released_pmf(point: ChannelPoint) -> np.ndarray:
    if point.n_particles > MAX_BRUTEFORCE_PARTICLES:
        raise ParameterError(
            "n_particles",
            f"{point.n_particles} exceeds the exhaustive limit {MAX_BRUTEFORCE_PARTICLES}",
        )
    return binomial_output_pmf(1.0, point)


def _mutual_information_grid(p1: np.ndarray, released: np.ndarray) -> np.ndarray:
    """I(X;Y) in bits for each input weight in `p1`"""
    silent = np.zeros_like(released)
    silent[0] = 1.0
    p1 = np.atleast_1d(p1)[:, None]
    output = p1 * released[None, :] + (1.0 - p1) * silent[None, :]
    h_y = entr(output).sum(axis=1)
    h_y_given_x = p1[:, 0] * entr(released).sum()
    return (h_y - h_y_given_x) / LN2


def mutual_information_bruteforce(p1: float, point: ChannelPoint) -> float:
    """I(X;Y) from the joint law of X in {release, silent} and Y in {0..N}"""
    _check_probability("p1", p1)
    released = _released_pmf(point)
    return float(_mutual_information_grid(np.array([p1]), released)[0])


def capacity_bruteforce(point: ChannelPoint) -> float:
    """Grid maximisation of the exhaustive MI refined by a bounded scalar search"""
    released = _released_pmf(point)
    grid = np.linspace(0.0, 1.0, int(round(1.0 / GRID_STEP)) + 1)
    values = _mutual_information_grid(grid, released)
    best = int(np.argmax(values))
    best_value = float(values[best])

    low = grid[max(best - 1, 0)]
    high = grid[min(best + 1, grid.size - 1)]
    if high > low:
        refined = minimize_scalar(
            lambda x: -float(_mutual_information_grid(np.array([x]), released)[0]),
            bounds=(low, high),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best_value = max(best_value, -float(refined.fun))
    return max(best_value, 0.0) / point.tau


def optimal_input_grid_search(mu_p: float, step: float = 1e-6) -> float:
    """argmax over p1 of the Z-channel MI on a uniform grid"""
    _check_probability("mu_p", mu_p)
    grid = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    success = grid * (1.0 - mu_p)
    h_mu = (entr(mu_p) + entr(1.0 - mu_p)) / LN2
    values = (entr(success) + entr(1.0 - success)) / LN2 - grid * h_mu
    return float(grid[int(np.argmax(values))])


def z_equivalence_gap(point: ChannelPoint, p1: float) -> float:
    """|exhaustive MI - Z-channel MI| at matched mu_p"""
    return abs(mutual_information_bruteforce(p1, point) - mutual_information_z(p1, point.mu_p))
