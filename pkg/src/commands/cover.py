import click

from src.commands.common import emit, json_option
from src.models.cohomology import CoverProblem
from src.services.cohomology import CohomologyService
from src.services.fixtures import FixtureLoader
from src.utils.formatting import render_cover


@click.command("lift-cover")
@click.argument("path")
@json_option
def command(path: str, as_json: bool) -> int:
    """Turn covers m_gamma of s_gamma into a homomorphism m' and the corrections a_gamma"""
    source = FixtureLoader.resolve(path)
    problem = FixtureLoader.parse_model(CoverProblem, FixtureLoader.read_json(source), str(source))
    emit(CohomologyService.lift_cover(problem), as_json, render_cover)
    return 0
