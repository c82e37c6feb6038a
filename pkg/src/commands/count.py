import click

from src.commands.common import emit, galois_option, json_option, load_inputs, require_valid
from src.services.analysis import AnalysisPipeline
from src.services.cohomology import CohomologyService
from src.utils.formatting import render_count


@click.command("count")
@click.argument("path")
@galois_option
@json_option
@click.option("--oracle", is_flag=True, help="Cross-check the product formula by enumerating cocycles")
def command(path: str, galois_path: str, as_json: bool, oracle: bool) -> int:
    """Number of equivariant models relative to the finite quotient"""
    bundle, galois = load_inputs(path, galois_path)
    if not require_valid(bundle, as_json):
        return 1
    action = galois or bundle.galois or AnalysisPipeline.default_action(bundle.datum)
    emit(CohomologyService.count_models(bundle.datum, action, oracle=oracle), as_json, render_count)
    return 0
