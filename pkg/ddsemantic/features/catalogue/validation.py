"""
Self-contained oracle comparisons behind the `validate` command
"""

import math
import time
from typing import Callable, List, Sequence

import numpy as np
import structlog
from pydantic import BaseModel

from ddsemantic.features.interventions.schemas import InterventionSpec, SweepCurve, SweepPoint
from ddsemantic.features.interventions.semantic import admissible_threshold, extract_semantic_information
from ddsemantic.features.pharmacodynamics.service import viability
from ddsemantic.features.pic_information.bruteforce import (
    capacity_bruteforce,
    optimal_input_grid_search,
    z_equivalence_gap,
)
from ddsemantic.features.pic_information.schemas import ChannelPoint
from ddsemantic.features.pic_information.service import (
    capacity_closed_form,
    mutual_information_derivative,
    optimal_input,
)
from ddsemantic.features.reactive_channel.oracles import (
    eventual_hit_with_degradation,
    hitting_probability_absorbing,
)
from ddsemantic.features.reactive_channel.schemas import (
    SimulationMode,
    SimulationSettings,
    SystemParameters,
)
from ddsemantic.features.reactive_channel.service import eventual_probability, simulate_impulse

logger = structlog.get_logger(__name__)

P_I_GRID = tuple(round(0.05 * k, 2) for k in range(1, 20))
P1_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
MU_GRID = tuple(round(0.01 * k, 2) for k in range(100))


class ValidationCheck(BaseModel):
    name: str
    observed: float
    expected: float
    tolerance: float
    passed: bool
    seconds: float = 0.0


class ValidationReport(BaseModel):
    checks: List[ValidationCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def _timed(name: str, expected: float, tolerance: float, compute: Callable[[], float]) -> ValidationCheck:
    started = time.perf_counter()
    observed = float(compute())
    check = ValidationCheck(
        name=name,
        observed=observed,
        expected=expected,
        tolerance=tolerance,
        passed=abs(observed - expected) <= tolerance,
        seconds=round(time.perf_counter() - started, 3),
    )
    logger.info("validation_check", name=name, observed=observed, passed=check.passed)
    return check


def z_equivalence_max_gap(max_particles: int = 30) -> float:
    return max(
        z_equivalence_gap(ChannelPoint(p_i=p_i, n_particles=n, tau=1.0), p1)
        for n in range(1, max_particles + 1)
        for p_i in P_I_GRID
        for p1 in P1_GRID
    )


def capacity_max_gap(max_particles: int = 30, tau: float = 0.02) -> float:
    gaps = []
    for n in range(1, max_particles + 1):
        for p_i in P_I_GRID:
            point = ChannelPoint(p_i=p_i, n_particles=n, tau=tau)
            gaps.append(abs(capacity_bruteforce(point) - capacity_closed_form(point.mu_p, tau)))
    return max(gaps)


def argmax_max_gap(mu_grid: Sequence[float] = MU_GRID) -> float:
    return max(abs(optimal_input(mu).p1_star - optimal_input_grid_search(mu)) for mu in mu_grid)


def derivative_max_residual(mu_grid: Sequence[float] = MU_GRID) -> float:
    return max(
        abs(mutual_information_derivative(optimal_input(mu).p1_star, mu))
        for mu in mu_grid
        if 0.0 < mu < 1.0
    )


def semantic_oracle(curve: SweepCurve, epsilon: float) -> float:
    """Filter-then-minimise written independently of the vectorised extractor"""
    v_min = min(p.viability for p in curve.points)
    threshold = admissible_threshold(v_min, epsilon)
    admissible = [p.capacity_bps for p in curve.points if p.viability <= threshold]
    return min(admissible)


def random_curve(rng: np.random.Generator, size: int) -> SweepCurve:
    """Synthetic curve with coarse values so ties and plateaus occur"""
    spec = InterventionSpec(parameter="lambda", range_min=1.0, range_max=float(size + 1), grid_points=2)
    points = tuple(
        SweepPoint(
            param_value=float(i + 1),
            p_i_at_tau=0.0,
            mu_p=1.0,
            n_particles=0,
            c_int=0.0,
            viability=float(rng.integers(0, 20)) / 20.0,
            capacity_bps=float(rng.integers(0, 50)) / 10.0,
        )
        for i in range(size)
    )
    return SweepCurve(spec=spec, points=points, tau=0.02)


def semantic_oracle_mismatches(trials: int = 10_000, seed: int = 0) -> int:
    rng = np.random.default_rng(seed)
    mismatches = 0
    for _ in range(trials):
        curve = random_curve(rng, int(rng.integers(1, 12)))
        epsilon = float(rng.choice([0.0, 0.01, 0.05, 0.1, 0.3]))
        if extract_semantic_information(curve, epsilon).s_epsilon != semantic_oracle(curve, epsilon):
            mismatches += 1
    return mismatches


def run_validation(trials: int = 100_000, seed: int = 12345, workers: int = 1, quick: bool = False) -> ValidationReport:
    """All oracle comparisons; `quick` trims grids for smoke runs"""
    max_particles = 8 if quick else 30
    mu_grid = MU_GRID[::10] if quick else MU_GRID
    checks = [
        _timed("z_channel_equivalence", 0.0, 1e-9, lambda: z_equivalence_max_gap(max_particles)),
        _timed("capacity_closed_form_vs_bruteforce", 0.0, 1e-6, lambda: capacity_max_gap(max_particles)),
        _timed("optimal_input_vs_grid_argmax", 0.0, 1e-4, lambda: argmax_max_gap(mu_grid)),
        _timed("derivative_root_at_optimum", 0.0, 1e-8, lambda: derivative_max_residual(mu_grid)),
        _timed("hill_threshold_half", 0.5, 1e-15, lambda: viability(0.05, 0.05, 10)),
        _timed("hill_untreated", 1.0, 0.0, lambda: viability(0.0, 0.05, 10)),
        _timed("hill_double_threshold", 1.0 / 1025.0, 1e-15, lambda: viability(0.1, 0.05, 10)),
        _timed(
            "semantic_extraction_oracle",
            0.0,
            0.0,
            lambda: semantic_oracle_mismatches(1_000 if quick else 10_000),
        ),
    ]

    geometry = dict(D=5e-9, a=0.5e-6, r0=1e-6)
    absorbing = SimulationSettings(
        dt=1e-6, trials=trials, seed=seed, mode=SimulationMode.ABSORBING, time_grid=(0.02,)
    )
    hit_params = SystemParameters(tau=0.02, k_d=0.0, **geometry)
    expected = hitting_probability_absorbing(t=0.02, **geometry)
    started = time.perf_counter()
    response = simulate_impulse(hit_params, absorbing, workers)
    stderr = math.sqrt(expected * (1 - expected) / trials)
    checks.append(
        ValidationCheck(
            name="first_passage_absorbing_20ms",
            observed=float(response.p_i[-1]),
            expected=expected,
            tolerance=3 * stderr,
            passed=abs(float(response.p_i[-1]) - expected) <= 3 * stderr,
            seconds=round(time.perf_counter() - started, 3),
        )
    )

    decay_params = SystemParameters(k_d=2e4, **geometry)
    expected = eventual_hit_with_degradation(k_d=2e4, **geometry)
    started = time.perf_counter()
    response = eventual_probability(
        decay_params, absorbing.model_copy(update={"seed": seed + 1}), horizon=2e-3, workers=workers
    )
    stderr = math.sqrt(expected * (1 - expected) / trials)
    checks.append(
        ValidationCheck(
            name="eventual_hit_with_degradation",
            observed=float(response.p_i[-1]),
            expected=expected,
            tolerance=3 * stderr,
            passed=abs(float(response.p_i[-1]) - expected) <= 3 * stderr,
            seconds=round(time.perf_counter() - started, 3),
        )
    )
    return ValidationReport(checks=checks)
