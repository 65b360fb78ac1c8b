"""
Intervention Engine
Counter-factual sweeps over one DDS parameter and the temporal S_eps profile
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import structlog

from ddsemantic.core.exceptions import HorizonError, ParameterError
from ddsemantic.core.seeding import derive_seed
from ddsemantic.features.interventions.schemas import (
    InterventionSpec,
    SweepCurve,
    SweepPoint,
    TemporalSample,
)
from ddsemantic.features.interventions.semantic import extract_semantic_information
from ddsemantic.features.pharmacodynamics.service import (
    delta_viability,
    dose_response,
    particle_budget,
)
from ddsemantic.features.pic_information.service import (
    capacity_closed_form,
    crossover_probability,
)
from ddsemantic.features.reactive_channel.schemas import (
    ALTERABLE_PARAMETERS,
    ImpulseResponse,
    SimulationSettings,
    SystemParameters,
)
from ddsemantic.features.reactive_channel.service import simulate_impulse

logger = structlog.get_logger(__name__)

# Stream index of the unaltered configuration
BASELINE_STREAM = len(ALTERABLE_PARAMETERS)


def _simulation_inputs(
    params: SystemParameters,
    settings: SimulationSettings,
    horizon: float,
    stream: int,
    point: int,
) -> tuple:
    run_params = params.with_values(tau=max(horizon, params.tau))
    run_settings = settings.model_copy(
        update={"seed": derive_seed(settings.seed, stream, point), "time_grid": None}
    )
    return run_params, run_settings


def simulate_baseline(
    params: SystemParameters,
    settings: SimulationSettings,
    horizon: Optional[float] = None,
    workers: int = 1,
) -> ImpulseResponse:
    """Impulse response of the unaltered configuration"""
    run_params, run_settings = _simulation_inputs(
        params, settings, horizon or params.tau, BASELINE_STREAM, 0
    )
    return simulate_impulse(run_params, run_settings, workers)


def simulate_family(
    spec: InterventionSpec,
    params: SystemParameters,
    settings: SimulationSettings,
    horizon: Optional[float] = None,
    workers: int = 1,
) -> List[ImpulseResponse]:
    """
    Impulse responses an intervention family needs, simulated to `horizon`.

    P_i does not depend on lambda, so a lambda family shares one response;
    reaction-rate families get one response per grid point.
    """
    horizon = horizon or params.tau
    stream = ALTERABLE_PARAMETERS.index(spec.parameter)

    if spec.parameter == "lambda":
        run_params, run_settings = _simulation_inputs(params, settings, horizon, stream, 0)
        return [simulate_impulse(run_params, run_settings, workers)]

    values = spec.grid()

    def run_point(index: int) -> ImpulseResponse:
        altered = params.with_values(**{spec.parameter: float(values[index])})
        run_params, run_settings = _simulation_inputs(altered, settings, horizon, stream, index)
        impulse = simulate_impulse(run_params, run_settings)
        logger.debug(
            "sweep_point_simulated",
            parameter=spec.parameter,
            index=index,
            value=float(values[index]),
            p_final=float(impulse.p_i[-1]),
        )
        return impulse

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_point, range(values.size)))
    return [run_point(i) for i in range(values.size)]


def evaluate_point(
    params: SystemParameters,
    overridden_value: float,
    parameter_id: str,
    impulse: Optional[ImpulseResponse] = None,
    settings: Optional[SimulationSettings] = None,
    tau: Optional[float] = None,
    baseline_viability: Optional[float] = None,
) -> SweepPoint:
    """(value, P_i, mu_p, C_int, V, C) for one intervened configuration"""
    if parameter_id not in ALTERABLE_PARAMETERS:
        raise ParameterError(parameter_id, f"not one of {', '.join(ALTERABLE_PARAMETERS)}")
    altered = params.with_values(**{parameter_id: overridden_value})
    tau = tau or altered.tau

    if impulse is None:
        if settings is None:
            raise ParameterError("settings", "required when no impulse response is supplied")
        run_params = altered.with_values(tau=max(tau, altered.tau))
        impulse = simulate_impulse(run_params, settings.model_copy(update={"time_grid": None}))

    p_i = impulse.probability_at(tau)
    n_particles = particle_budget(altered.lambda_, tau)
    mu_p = crossover_probability(p_i, n_particles)
    dose = dose_response(p_i, n_particles, altered.C_th, altered.n)

    delta = change = None
    if baseline_viability is not None:
        diff = delta_viability(baseline_viability, dose.viability, altered.epsilon)
        delta, change = diff.delta, diff.change

    return SweepPoint(
        param_value=float(overridden_value),
        p_i_at_tau=p_i,
        mu_p=mu_p,
        n_particles=n_particles,
        c_int=dose.c_int,
        viability=dose.viability,
        capacity_bps=capacity_closed_form(mu_p, tau),
        delta_v=delta,
        change=change,
    )


def baseline_viability_at(params: SystemParameters, impulse: ImpulseResponse, tau: float) -> float:
    p_i = impulse.probability_at(tau)
    n_particles = particle_budget(params.lambda_, tau)
    return dose_response(p_i, n_particles, params.C_th, params.n).viability


def curve_from_impulses(
    spec: InterventionSpec,
    params: SystemParameters,
    impulses: Sequence[ImpulseResponse],
    tau: float,
    baseline_viability: Optional[float] = None,
) -> SweepCurve:
    """Assemble a sweep curve at `tau` from already simulated responses"""
    values = spec.grid()
    if len(impulses) not in (1, values.size):
        raise ParameterError("impulses", f"expected 1 or {values.size} responses, got {len(impulses)}")
    points = tuple(
        evaluate_point(
            params,
            float(value),
            spec.parameter,
            impulse=impulses[0] if len(impulses) == 1 else impulses[i],
            tau=tau,
            baseline_viability=baseline_viability,
        )
        for i, value in enumerate(values)
    )
    return SweepCurve(spec=spec, points=points, tau=tau, baseline_viability=baseline_viability)


def sweep(
    spec: InterventionSpec,
    params: SystemParameters,
    settings: SimulationSettings,
    workers: int = 1,
    baseline: Optional[ImpulseResponse] = None,
) -> SweepCurve:
    """Evaluate every grid point of one intervention at params.tau"""
    impulses = simulate_family(spec, params, settings, params.tau, workers)
    if baseline is None:
        baseline = simulate_baseline(params, settings, params.tau, workers)
    v_base = baseline_viability_at(params, baseline, params.tau)
    curve = curve_from_impulses(spec, params, impulses, params.tau, v_base)
    logger.info(
        "sweep_finished",
        parameter=spec.parameter,
        points=len(curve.points),
        v_min=float(curve.column("viability").min()),
    )
    return curve


def temporal_profile(
    specs: Sequence[InterventionSpec],
    params: SystemParameters,
    settings: SimulationSettings,
    tau_grid: Sequence[float],
    workers: int = 1,
    families: Optional[Dict[str, List[ImpulseResponse]]] = None,
) -> Dict[str, List[TemporalSample]]:
    """
    S_eps(tau) per intervention family over `tau_grid`.

    Impulse responses are cumulative, so each family is simulated once to
    max(tau_grid) unless `families` already holds responses.
    """
    if not tau_grid:
        raise ParameterError("tau_grid", "must not be empty")
    if any(t <= 0 for t in tau_grid):
        raise ParameterError("tau_grid", "entries must be positive")
    horizon = max(tau_grid)

    profile: Dict[str, List[TemporalSample]] = {}
    for spec in specs:
        if families is not None and spec.parameter in families:
            impulses = families[spec.parameter]
            shortest = min(i.horizon for i in impulses)
            if horizon > shortest * (1 + 1e-12):
                raise HorizonError(
                    f"tau {horizon} beyond simulated horizon {shortest} for {spec.parameter}"
                )
        else:
            impulses = simulate_family(spec, params, settings, horizon, workers)

        samples = []
        for tau in tau_grid:
            curve = curve_from_impulses(spec, params, impulses, tau)
            result = extract_semantic_information(curve, params.epsilon)
            samples.append(
                TemporalSample(
                    tau=float(tau),
                    s_epsilon=result.s_epsilon,
                    critical_value=result.critical_value,
                    v_min=result.v_min,
                )
            )
        profile[spec.parameter] = samples
        logger.info("temporal_profile_finished", parameter=spec.parameter, samples=len(samples))
    return profile
