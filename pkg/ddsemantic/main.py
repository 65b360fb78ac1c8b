"""
DDS semantic information toolkit
Command-line entry point
"""

import typer

from ddsemantic import __version__
from ddsemantic.cli.router import include_commands


def create_application() -> typer.Typer:
    """Create and configure the command-line application"""
    app = typer.Typer(
        name="dds-semantic",
        help=(
            "Semantic information for drug-delivery-system parameter optimisation: "
            "internalisation probability, Z-channel capacity, Hill viability and S_eps(tau)."
        ),
        no_args_is_help=True,
        add_completion=False,
        pretty_exceptions_enable=False,
    )

    @app.callback(invoke_without_command=True)
    def root(
        version: bool = typer.Option(False, "--version", help="Show the version and exit"),
    ) -> None:
        if version:
            typer.echo(__version__)
            raise typer.Exit()

    return include_commands(app)


app = create_application()


def main() -> None:
    app()


if __name__ == "__main__":
    main()
