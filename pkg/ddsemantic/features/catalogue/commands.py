"""
Catalogue and validation commands
"""

from typing import Annotated

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
from ddsemantic.core.exceptions import ValidationFailure
from ddsemantic.features.catalogue.service import run_catalogue
from ddsemantic.features.catalogue.validation import run_validation


@handle_errors
def catalogue(
    config: ConfigOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    out: OutOption = None,
    format: FormatOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Full run: every sweep, the temporal profile and the catalogue document"""
    ctx = build_context(config, seed, threads, out, format, log_level)
    result, paths = run_catalogue(ctx.config, ctx.workers)

    table = Table(title="Semantic information catalogue")
    for column in ("parameter", "S_eps [bit/s]", "critical value", "V_min", "meaningless range"):
        table.add_column(column, justify="right")
    for entry in result.entries:
        r = entry.result
        band = "-" if r.meaningless_range is None else f"[{r.meaningless_range[0]:.4g}, {r.meaningless_range[1]:.4g}]"
        table.add_row(entry.spec.parameter, f"{r.s_epsilon:.4f}", f"{r.critical_value:.6g}", f"{r.v_min:.4g}", band)
    console.print(table)
    if result.pooled is not None:
        console.print(
            f"pooled S_eps = {result.pooled.s_epsilon:.4f} bit/s via {result.pooled.parameter} "
            f"= {result.pooled.critical_value:.6g}"
        )
    console.print(f"{len(paths)} files written to {ctx.out}")


@handle_errors
def validate(
    trials: Annotated[int, typer.Option("--trials", min=1, help="Monte Carlo trials per oracle")] = 100_000,
    quick: Annotated[bool, typer.Option("--quick", help="Smaller grids for a smoke run")] = False,
    config: ConfigOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Run every oracle comparison; exit 1 when any fails"""
    ctx = build_context(config, seed, threads, None, None, log_level)
    report = run_validation(
        trials=trials, seed=ctx.config.simulation.seed, workers=ctx.workers, quick=quick
    )

    table = Table(title="Oracle validation")
    for column in ("check", "observed", "expected", "tolerance", "seconds", "result"):
        table.add_column(column, justify="right")
    for check in report.checks:
        table.add_row(
            check.name,
            f"{check.observed:.6g}",
            f"{check.expected:.6g}",
            f"{check.tolerance:.2g}",
            f"{check.seconds:.2f}",
            "[green]pass[/green]" if check.passed else "[red]FAIL[/red]",
        )
    console.print(table)

    if not report.passed:
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        raise ValidationFailure(failed)
