"""
Command router
Mounts the commands of every feature on one application
"""

import typer

from ddsemantic.features.catalogue.commands import catalogue, validate
from ddsemantic.features.interventions.commands import semantic, sweep
from ddsemantic.features.pic_information.commands import capacity
from ddsemantic.features.reactive_channel.commands import impulse


def include_commands(app: typer.Typer) -> typer.Typer:
    app.command("impulse")(impulse)
    app.command("capacity")(capacity)
    app.command("sweep")(sweep)
    app.command("semantic")(semantic)
    app.command("validate")(validate)
    app.command("catalogue")(catalogue)
    return app
