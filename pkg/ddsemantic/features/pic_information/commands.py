"""
Capacity table command
"""

from typing import Annotated, List, Optional

import typer
from rich.table import Table

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
from ddsemantic.features.catalogue.schemas import OutputFormat
from ddsemantic.features.catalogue.service import publish
from ddsemantic.features.catalogue.writers import write_capacity_csv
from ddsemantic.features.interventions.service import simulate_baseline
from ddsemantic.features.pharmacodynamics.service import particle_budget
from ddsemantic.features.pic_information.service import (
    capacity_closed_form,
    crossover_probability,
    optimal_input,
)


@handle_errors
def capacity(
    mu: Annotated[
        Optional[List[float]], typer.Option("--mu", help="Crossover probability, repeatable")
    ] = None,
    p_i: Annotated[
        Optional[float], typer.Option("--p-i", min=0.0, max=1.0, help="Detection probability at tau")
    ] = None,
    config: ConfigOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    out: OutOption = None,
    format: FormatOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Tabulate the closed-form capacity and p1* for mu_p values or the configured system"""
    ctx = build_context(config, seed, threads, out, format, log_level)
    params = ctx.config.system

    if not mu:
        if p_i is None:
            p_i = simulate_baseline(params, ctx.config.simulation, workers=ctx.workers).probability_at(params.tau)
        n_particles = particle_budget(params.lambda_, params.tau)
        mu = [crossover_probability(p_i, n_particles)]
        console.print(f"P_i = {p_i:.6g}, N = {n_particles}, tau = {params.tau:g} s")

    rows = []
    for value in mu:
        if value != 1.0:
            best = optimal_input(value, params.tau)
            rows.append((value, best.p1_star, best.mutual_info_bits, capacity_closed_form(value, params.tau)))
        else:
            rows.append((value, 0.0, 0.0, 0.0))

    table = Table(title=f"Z-channel capacity, tau = {params.tau:g} s")
    for column in ("mu_p", "p1*", "I [bit/use]", "C [bit/s]"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(f"{v:.6g}" for v in row))
    console.print(table)

    if out is not None and OutputFormat.CSV in ctx.formats:
        publish(ctx.out, lambda staging: [write_capacity_csv(rows, staging / "capacity.csv")])
