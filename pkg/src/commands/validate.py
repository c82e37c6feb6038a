import click

from src.commands.common import emit, json_option
from src.services.fixtures import FixtureLoader
from src.services.spherical_data import SphericalDataService
from src.utils.formatting import render_validation


@click.command("validate")
@click.argument("path")
@json_option
def command(path: str, as_json: bool) -> int:
    """Check a datum against the structural and color axioms"""
    report = SphericalDataService.validate(FixtureLoader.load_bundle(path).datum)
    emit(report, as_json, render_validation)
    return 0 if report.is_valid else 1
