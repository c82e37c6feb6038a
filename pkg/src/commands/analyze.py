import click

from src.commands.common import emit, galois_option, json_option, load_inputs
from src.services.analysis import AnalysisPipeline
from src.utils.formatting import render_analysis


@click.command("analyze")
@click.argument("path")
@galois_option
@json_option
@click.option("--compose-swap", is_flag=True, help="Report a o m_gamma for the first color pair and its order")
@click.option("--oracle", is_flag=True, help="Cross-check the model count by enumerating cocycles")
def command(path: str, galois_path: str, as_json: bool, compose_swap: bool, oracle: bool) -> int:
    """Full analysis: invariants, Aut, preservation, verdict and model count"""
    bundle, galois = load_inputs(path, galois_path)
    report = AnalysisPipeline.analyze(bundle, galois=galois, oracle=oracle, compose_swap=compose_swap)
    emit(report, as_json, render_analysis)
    return 0 if report.validation.is_valid else 1
