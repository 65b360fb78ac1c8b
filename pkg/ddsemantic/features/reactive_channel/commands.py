"""
Impulse response command
"""

from typing import Annotated, Optional

import typer

from ddsemantic.cli.dependencies import (
    ConfigOption,
    FormatOption,
    LogLevelOption,
    OutOption,
    SeedOption,
    ThreadsOption,
    build_context,
    console,
    handle_errors,
)
from ddsemantic.features.catalogue.service import publish
from ddsemantic.features.catalogue.writers import IMPULSE_FILE, write_impulse_csv
from ddsemantic.features.reactive_channel.schemas import SimulationMode
from ddsemantic.features.reactive_channel.service import simulate_impulse


@handle_errors
def impulse(
    config: ConfigOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    out: OutOption = None,
    format: FormatOption = None,
    log_level: LogLevelOption = None,
    mode: Annotated[
        Optional[SimulationMode], typer.Option("--mode", help="reactive or absorbing receiver")
    ] = None,
) -> None:
    """Simulate P_i(t | r0) and write t,p_i,stderr"""
    ctx = build_context(config, seed, threads, out, format, log_level)
    simulation = ctx.config.simulation
    if mode is not None:
        simulation = simulation.model_copy(update={"mode": mode})

    response = simulate_impulse(ctx.config.system, simulation, ctx.workers)
    for message in response.diagnostics:
        console.print(f"[yellow]warning:[/yellow] {message}")

    paths = publish(ctx.out, lambda staging: [write_impulse_csv(response, staging / IMPULSE_FILE)])
    console.print(
        f"P_i(tau) = {response.p_i[-1]:.6g} ± {response.stderr[-1]:.2g} "
        f"({response.trials} trials) -> {paths[0]}"
    )
