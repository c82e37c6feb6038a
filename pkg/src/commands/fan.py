from typing import Optional

import click

from src.commands.common import emit, galois_option, json_option, load_inputs, require_valid
from src.services.analysis import AnalysisPipeline
from src.services.fixtures import FixtureLoader
from src.utils.formatting import render_fan


@click.command("check-fan")
@click.argument("path")
@click.option("--fan", "fan_path", type=str, default=None, help="Colored fan file (overrides the bundled one)")
@galois_option
@json_option
def command(path: str, fan_path: Optional[str], galois_path: Optional[str], as_json: bool) -> int:
    """Gamma-stability of a colored fan and the embedding verdict"""
    bundle, galois = load_inputs(path, galois_path)
    fan = FixtureLoader.load_fan(fan_path) if fan_path else bundle.fan
    if fan is None:
        raise click.UsageError("no colored fan: pass --fan or bundle one with the datum")
    if not require_valid(bundle, as_json):
        return 1
    emit(AnalysisPipeline.check_fan(bundle, fan, galois=galois), as_json, render_fan)
    return 0
