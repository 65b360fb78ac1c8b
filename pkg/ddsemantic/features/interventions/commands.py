"""
Sweep and temporal semantic-information commands
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
    RunContext,
    build_context,
    console,
    handle_errors,
)
from ddsemantic.core.exceptions import ParameterError
from ddsemantic.features.catalogue.plots import plot_sweep, plot_temporal
from ddsemantic.features.catalogue.schemas import CatalogueEntry, OutputFormat
from ddsemantic.features.catalogue.service import publish
from ddsemantic.features.catalogue.writers import (
    TEMPORAL_FILE,
    sweep_filename,
    write_sweep_csv,
    write_temporal_csv,
)
from ddsemantic.features.interventions.schemas import InterventionSpec, default_interventions
from ddsemantic.features.interventions.semantic import (
    REFERENCE_RESULTS,
    extract_semantic_information,
    reference_deviation,
)
from ddsemantic.features.interventions.service import sweep as run_sweep
from ddsemantic.features.interventions.service import temporal_profile

ParameterOption = Annotated[str, typer.Option("--parameter", "-p", help="lambda, k_d, k_f, k_b or k_i")]


def _spec_for(ctx: RunContext, parameter: str) -> InterventionSpec:
    for spec in (*ctx.config.interventions, *default_interventions()):
        if spec.parameter == parameter:
            return spec
    raise ParameterError("parameter", f"unknown intervention '{parameter}'")


@handle_errors
def sweep(
    parameter: ParameterOption,
    config: ConfigOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    out: OutOption = None,
    format: FormatOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Run one counter-factual intervention and extract S_eps(tau)"""
    ctx = build_context(config, seed, threads, out, format, log_level)
    spec = _spec_for(ctx, parameter)
    params = ctx.config.system

    curve = run_sweep(spec, params, ctx.config.simulation, ctx.workers)
    result = extract_semantic_information(
        curve, params.epsilon, interpolate=ctx.config.output.interpolate_critical
    )
    reference = reference_deviation(result) if parameter in REFERENCE_RESULTS else None
    entry = CatalogueEntry(spec=spec, curve=curve, result=result, reference=reference)

    def write(staging):
        written = []
        if OutputFormat.CSV in ctx.formats:
            written.append(write_sweep_csv(curve, staging / sweep_filename(parameter)))
        if OutputFormat.SVG in ctx.formats:
            written.append(plot_sweep(curve, result, staging / sweep_filename(parameter, "svg")))
        if OutputFormat.JSON in ctx.formats:
            path = staging / sweep_filename(parameter, "json")
            path.write_text(entry.model_dump_json(indent=2) + "\n", encoding="utf-8")
            written.append(path)
        return written

    publish(ctx.out, write)
    console.print(
        f"{parameter}: S_eps = {result.s_epsilon:.4f} bit/s at {result.critical_value:.6g} "
        f"(± {result.grid_step:.3g}), admissible points = {result.admissible_set_size}, "
        f"meaningless range = {result.meaningless_range}"
    )


@handle_errors
def semantic(
    parameter: Annotated[
        Optional[List[str]], typer.Option("--parameter", "-p", help="Restrict to these families")
    ] = None,
    config: ConfigOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    out: OutOption = None,
    format: FormatOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Temporal profile S_eps(tau) over the configured tau grid"""
    ctx = build_context(config, seed, threads, out, format, log_level)
    specs = ctx.config.interventions
    if parameter:
        specs = tuple(_spec_for(ctx, name) for name in parameter)

    profile = temporal_profile(
        specs, ctx.config.system, ctx.config.simulation, ctx.config.temporal.tau_grid, ctx.workers
    )

    def write(staging):
        written = []
        if OutputFormat.CSV in ctx.formats:
            written.append(write_temporal_csv(profile, staging / TEMPORAL_FILE))
        if OutputFormat.SVG in ctx.formats:
            written.append(plot_temporal(profile, staging / "temporal_profile.svg"))
        return written

    publish(ctx.out, write)

    table = Table(title="S_eps(tau) [bit/s]")
    table.add_column("tau [ms]", justify="right")
    for name in profile:
        table.add_column(name, justify="right")
    taus = ctx.config.temporal.tau_grid
    for row, tau in enumerate(taus):
        table.add_row(f"{tau * 1e3:.4g}", *(f"{profile[name][row].s_epsilon:.4f}" for name in profile))
    console.print(table)
