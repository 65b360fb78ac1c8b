"""
Reactive Channel Service
Particle-based estimate of the internalisation probability P_i(t | r0)

Each particle is released at (r0, 0, 0) next to a spherical receiver centred
at the origin and moves through FREE -> BOUND -> INTERNALISED, or ends up
DEGRADED while free in the medium.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
import structlog

from ddsemantic.core.exceptions import ParameterError, SimulationError
from ddsemantic.core.seeding import block_generator
from ddsemantic.features.reactive_channel.schemas import (
    ImpulseResponse,
    SimulationMode,
    SimulationSettings,
    SystemParameters,
)

logger = structlog.get_logger(__name__)

FREE, BOUND, DEGRADED, INTERNALISED = 0, 1, 2, 3

# Radial offset of a particle released from the bound state
RELEASE_OFFSET = 1e-6

# Minimum surface gap, in units of sqrt(4 D t), for an unchecked jump of length t;
# the contact probability it skips is below erfc(6) ~ 2e-17
LEAP_CLEARANCE = 6.0


def surface_reactivity(params: SystemParameters) -> float:
    """k_f spread over the receiver surface, m/s"""
    return params.k_f / (4.0 * math.pi * params.a**2)


def binding_probability(params: SystemParameters, dt: float) -> float:
    """Unclamped per-contact binding probability kappa * sqrt(pi dt / D)"""
    return surface_reactivity(params) * math.sqrt(math.pi * dt / params.D)


def _simulate_block(
    params: SystemParameters,
    settings: SimulationSettings,
    n: int,
    n_steps: int,
    p_bind: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Internalisation step index per particle, -1 when never internalised.

    Every particle carries its own clock. A free particle whose gap to the
    receiver is at least LEAP_CLEARANCE * sqrt(4 D t) covers t in a single
    Gaussian jump instead of t / dt contact-checked steps; it moves again when
    the global step reaches its clock.
    """
    a, dt, D = params.a, settings.dt, params.D
    sigma = math.sqrt(2.0 * D * dt)
    p_degrade = -math.expm1(-params.k_d * dt)
    leave_rate = params.k_b + params.k_i
    p_leave = -math.expm1(-leave_rate * dt)
    p_internalise = params.k_i / leave_rate if leave_rate > 0 else 0.0
    absorbing = settings.mode is SimulationMode.ABSORBING
    leap_scale = 1.0 / (LEAP_CLEARANCE**2 * 4.0 * D * dt)

    pos = np.zeros((n, 3))
    pos[:, 0] = params.r0
    state = np.full(n, FREE, dtype=np.int8)
    hit_step = np.full(n, -1, dtype=np.int64)
    clock = np.zeros(n, dtype=np.int64)
    active = np.arange(n)

    for step in range(n_steps):
        if active.size == 0:
            break
        due = active[clock[active] == step]
        if due.size == 0:
            continue
        clock[due] = step + 1
        current = state[due]
        free_idx = due[current == FREE]
        bound_idx = due[current == BOUND]

        if bound_idx.size:
            leavers = bound_idx[rng.random(bound_idx.size) < p_leave]
            if leavers.size:
                internalised = rng.random(leavers.size) < p_internalise
                done = leavers[internalised]
                state[done] = INTERNALISED
                hit_step[done] = step + 1
                released = leavers[~internalised]
                state[released] = FREE
                pos[released] *= 1.0 + RELEASE_OFFSET

        if free_idx.size:
            r_start = np.linalg.norm(pos[free_idx], axis=1)
            reach = np.maximum(r_start - a, 0.0) ** 2 * leap_scale
            far = reach >= 2.0
            if far.any():
                # Draw counts depend on `far` only; steps before the horizon
                # do not depend on it
                leapers = free_idx[far]
                k = np.minimum(reach[far], n_steps - step).astype(np.int64)
                gone = rng.random(k.size) < -np.expm1(-params.k_d * dt * k)
                kicks = rng.normal(0.0, 1.0, size=(k.size, 3)) * (sigma * np.sqrt(k))[:, None]
                state[leapers[gone]] = DEGRADED
                pos[leapers[~gone]] += kicks[~gone]
                clock[leapers[~gone]] = step + k[~gone]
                free_idx, r_start = free_idx[~far], r_start[~far]

        if free_idx.size:
            degraded = rng.random(free_idx.size) < p_degrade
            state[free_idx[degraded]] = DEGRADED
            movers = free_idx[~degraded]
            r_start = r_start[~degraded]
            moved = pos[movers] + rng.normal(0.0, sigma, size=(movers.size, 3))
            r = np.linalg.norm(moved, axis=1)
            inside = r < a

            if absorbing:
                # Brownian bridge: contact between two outside endpoints
                contact = inside.copy()
                outside = ~inside
                if outside.any():
                    gap_start = r_start[outside] - a
                    gap_end = r[outside] - a
                    p_cross = np.exp(-gap_start * gap_end / (D * dt))
                    contact[outside] = rng.random(gap_end.size) < p_cross
                hits = movers[contact]
                state[hits] = INTERNALISED
                hit_step[hits] = step + 1
                pos[movers] = moved
            else:
                if inside.any():
                    entered = movers[inside]
                    r_in = np.maximum(r[inside], np.finfo(float).tiny)
                    direction = moved[inside] / r_in[:, None]
                    binds = rng.random(entered.size) < p_bind
                    # Bound particles sit on the surface projection
                    moved[inside] = np.where(
                        binds[:, None],
                        direction * a,
                        direction * (2.0 * a - r_in)[:, None],
                    )
                    state[entered[binds]] = BOUND
                pos[movers] = moved

        active = active[state[active] < DEGRADED]

    return hit_step


def simulate_impulse(
    params: SystemParameters,
    settings: SimulationSettings,
    workers: int = 1,
) -> ImpulseResponse:
    """
    Estimate the cumulative internalisation probability on the time grid.

    Trials are simulated in fixed-size blocks with one counter-based stream
    each, so the result does not depend on `workers`.
    """
    settings.check_against(params)
    if params.r0 <= params.a:
        raise ParameterError("r0", "release point must lie outside the receiver")

    times = settings.resolve_time_grid(params.tau)
    horizon = float(times[-1])
    n_steps = math.ceil(horizon / settings.dt - 1e-9)

    diagnostics: List[str] = []
    if settings.mode is SimulationMode.ABSORBING:
        p_bind = 1.0
    else:
        raw = binding_probability(params, settings.dt)
        p_bind = min(max(raw, 0.0), 1.0)
        if raw > settings.p_bind_warning:
            message = (
                f"binding probability {raw:.4g} exceeds warning threshold "
                f"{settings.p_bind_warning:.4g}; reduce dt"
            )
            if raw > 1.0:
                message += " (clamped to 1)"
            diagnostics.append(message)
            logger.warning("p_bind_large", raw=raw, threshold=settings.p_bind_warning, dt=settings.dt)

    block_sizes = [
        min(settings.block_size, settings.trials - start)
        for start in range(0, settings.trials, settings.block_size)
    ]

    def run_block(index: int) -> np.ndarray:
        rng = block_generator(settings.seed, index)
        return _simulate_block(params, settings, block_sizes[index], n_steps, p_bind, rng)

    started = time.perf_counter()
    logger.debug(
        "simulation_started",
        trials=settings.trials,
        blocks=len(block_sizes),
        steps=n_steps,
        mode=settings.mode.value,
        workers=workers,
    )
    try:
        if workers > 1 and len(block_sizes) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run_block, range(len(block_sizes))))
        else:
            results = [run_block(i) for i in range(len(block_sizes))]
    except MemoryError as exc:
        raise SimulationError(f"not enough memory for block size {settings.block_size}") from exc

    steps = np.concatenate(results)
    hit_steps = np.sort(steps[steps >= 0])
    limits = np.floor(times / settings.dt + 1e-9).astype(np.int64)
    p_i = np.searchsorted(hit_steps, limits, side="right") / settings.trials
    stderr = np.sqrt(p_i * (1.0 - p_i) / settings.trials)

    logger.debug(
        "simulation_finished",
        internalised=int(hit_steps.size),
        p_final=float(p_i[-1]),
        elapsed=round(time.perf_counter() - started, 3),
    )
    return ImpulseResponse(
        times=times,
        p_i=p_i,
        stderr=stderr,
        trials=settings.trials,
        dt=settings.dt,
        horizon=horizon,
        hit_steps=hit_steps,
        p_bind=p_bind,
        diagnostics=tuple(diagnostics),
    )


def step_size_check(
    params: SystemParameters,
    settings: SimulationSettings,
    workers: int = 1,
) -> dict:
    """Compare P_i(tau) at dt and dt/2; the gap is reported in stderr units"""
    grid = (params.tau,)
    coarse = simulate_impulse(params, settings.model_copy(update={"time_grid": grid}), workers)
    fine = simulate_impulse(
        params,
        settings.model_copy(update={"time_grid": grid, "dt": settings.dt / 2}),
        workers,
    )
    p_coarse, p_fine = float(coarse.p_i[-1]), float(fine.p_i[-1])
    combined = math.sqrt(float(coarse.stderr[-1]) ** 2 + float(fine.stderr[-1]) ** 2)
    gap = abs(p_coarse - p_fine) / combined if combined > 0 else 0.0
    return {
        "p_i_dt": p_coarse,
        "p_i_half_dt": p_fine,
        "gap_in_stderr": gap,
        "within_tolerance": gap < 5.0,
    }


def eventual_probability(
    params: SystemParameters,
    settings: SimulationSettings,
    horizon: Optional[float] = None,
    workers: int = 1,
) -> ImpulseResponse:
    """Long-horizon run; with degradation this approaches the eventual probability"""
    horizon = horizon or params.tau
    long_params = params.with_values(tau=horizon)
    return simulate_impulse(
        long_params,
        settings.model_copy(update={"time_grid": (horizon,)}),
        workers,
    )
