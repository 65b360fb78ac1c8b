"""
Common CLI dependencies
Shared options, run context and the exception-to-exit-code mapping
"""

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, List, Optional

import structlog
import typer
from rich.console import Console
from rich.markup import escape

from ddsemantic.core.config import settings
from ddsemantic.core.exceptions import (
    ConfigError,
    DDSError,
    ParameterError,
    ValidationFailure,
)
from ddsemantic.core.logging import configure_logging
from ddsemantic.features.catalogue.config_loader import load_config
from ddsemantic.features.catalogue.schemas import OutputFormat, RunConfig

logger = structlog.get_logger(__name__)
console = Console()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", exists=True, dir_okay=False, help="TOML run configuration"),
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", min=0, max=2**64 - 1, help="Master random seed (u64)")
]
ThreadsOption = Annotated[
    Optional[int], typer.Option("--threads", min=1, help="Worker threads; never changes results")
]
OutOption = Annotated[Optional[Path], typer.Option("--out", help="Output directory")]
FormatOption = Annotated[
    Optional[List[OutputFormat]], typer.Option("--format", help="Output format, repeatable")
]
LogLevelOption = Annotated[Optional[str], typer.Option("--log-level", help="DEBUG, INFO, WARNING, ERROR")]


@dataclass(frozen=True)
class RunContext:
    config: RunConfig
    workers: int

    @property
    def out(self) -> Path:
        return self.config.output.directory

    @property
    def formats(self) -> set:
        return set(self.config.output.formats)


def build_context(
    config_path: Optional[Path],
    seed: Optional[int],
    threads: Optional[int],
    out: Optional[Path],
    formats: Optional[List[OutputFormat]],
    log_level: Optional[str],
) -> RunContext:
    configure_logging(level=log_level)
    config = load_config(config_path or settings.CONFIG_PATH)
    config = config.with_seed(seed).with_output(out or settings.OUTPUT_DIR, formats)
    return RunContext(config=config, workers=threads or settings.THREADS)


def handle_errors(command):
    """Map toolkit exceptions to exit codes in one place"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (ConfigError, ParameterError) as exc:
            console.print(f"[red]error:[/red] {escape(str(exc))}")
            raise typer.Exit(code=EXIT_USAGE) from exc
        except ValidationFailure as exc:
            console.print(f"[red]validation failed:[/red] {escape(str(exc))}")
            raise typer.Exit(code=EXIT_FAILURE) from exc
        except DDSError as exc:
            logger.error("command_failed", error=str(exc))
            console.print(f"[red]error:[/red] {escape(str(exc))}")
            raise typer.Exit(code=EXIT_FAILURE) from exc

    return wrapper
