"""
Pytest configuration and shared fixtures
"""

import numpy as np
import pytest
from hypothesis import settings as hypothesis_settings

from ddsemantic.core.logging import configure_logging
from ddsemantic.features.catalogue.schemas import OutputFormat, RunConfig
from ddsemantic.features.catalogue.config_loader import parse_config
from ddsemantic.features.interventions.schemas import InterventionSpec, SweepCurve, SweepPoint
from ddsemantic.features.reactive_channel.schemas import (
    ImpulseResponse,
    SimulationSettings,
    SystemParameters,
)

hypothesis_settings.register_profile("dds", deadline=None, max_examples=100)
hypothesis_settings.load_profile("dds")

TINY_CONFIG = """
[system]
tau = 0.002

[simulation]
dt = 1e-5
trials = 600
block_size = 200
seed = 7

[[interventions]]
parameter = "lambda"
range_min = 1000.0
range_max = 4000.0
grid_points = 4

[[interventions]]
parameter = "k_d"
range_min = 1000.0
range_max = 20000.0
grid_points = 3

[temporal]
tau_grid = [0.001, 0.0015, 0.002]
"""


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    configure_logging(level="WARNING", json_output=False)


@pytest.fixture
def default_params() -> SystemParameters:
    return SystemParameters()


@pytest.fixture
def short_params() -> SystemParameters:
    """Default physics over a 2 ms interval"""
    return SystemParameters(tau=2e-3)


@pytest.fixture
def fast_settings() -> SimulationSettings:
    return SimulationSettings(dt=1e-5, trials=2_000, block_size=500, seed=11)


@pytest.fixture
def tiny_config(tmp_path) -> RunConfig:
    config = parse_config(TINY_CONFIG)
    return config.with_output(tmp_path / "out", [OutputFormat.CSV, OutputFormat.JSON, OutputFormat.SVG])


def make_impulse(p_i: float, trials: int = 1_000, dt: float = 1e-6, horizon: float = 0.02) -> ImpulseResponse:
    """Response whose internalisations all happen in the first step"""
    hits = int(round(p_i * trials))
    times = np.array([horizon])
    p = np.array([hits / trials])
    return ImpulseResponse(
        times=times,
        p_i=p,
        stderr=np.sqrt(p * (1 - p) / trials),
        trials=trials,
        dt=dt,
        horizon=horizon,
        hit_steps=np.ones(hits, dtype=np.int64),
    )


def make_curve(viabilities, capacities, parameter: str = "lambda") -> SweepCurve:
    size = len(viabilities)
    spec = InterventionSpec(parameter=parameter, range_min=1.0, range_max=float(max(size, 2)), grid_points=max(size, 2))
    points = tuple(
        SweepPoint(
            param_value=float(i + 1),
            p_i_at_tau=0.0,
            mu_p=1.0,
            n_particles=0,
            c_int=0.0,
            viability=v,
            capacity_bps=c,
        )
        for i, (v, c) in enumerate(zip(viabilities, capacities))
    )
    return SweepCurve(spec=spec, points=points, tau=0.02)
