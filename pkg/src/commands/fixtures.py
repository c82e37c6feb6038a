import json

import click

from src.commands.common import json_option
from src.services.fixtures import CATALOG


@click.command("fixtures")
@json_option
def command(as_json: bool) -> int:
    """List the built-in fixtures"""
    if as_json:
        click.echo(json.dumps(sorted(CATALOG)))
    else:
        for name, description in CATALOG.items():
            click.echo(f"{name:<26}{description}")
    return 0
