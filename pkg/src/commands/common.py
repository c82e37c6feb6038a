"""Options and helpers shared by the commands"""
from typing import Callable, Optional, Tuple

import click
from pydantic import BaseModel

from src.models.galois import GaloisAction
from src.models.report import Bundle
from src.services.fixtures import FixtureLoader
from src.services.spherical_data import SphericalDataService
from src.utils.formatting import render_validation, to_json

json_option = click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON on stdout")
galois_option = click.option(
    "--galois",
    "galois_path",
    type=str,
    default=None,
    help="*-action file or fixture name (overrides the one bundled with the datum)",
)


def emit(model: BaseModel, as_json: bool, render: Callable[[BaseModel], str]) -> None:
    click.echo(to_json(model) if as_json else render(model))


def load_inputs(path: str, galois_path: Optional[str]) -> Tuple[Bundle, Optional[GaloisAction]]:
    bundle = FixtureLoader.load_bundle(path)
    return bundle, FixtureLoader.load_action(galois_path) if galois_path else None


def require_valid(bundle: Bundle, as_json: bool) -> bool:
    """Print the violations and return False when the datum is invalid"""
    report = SphericalDataService.validate(bundle.datum)
    if not report.is_valid:
        emit(report, as_json, render_validation)
    return report.is_valid
