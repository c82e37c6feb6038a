import json

import pytest
from click.testing import CliRunner

from src.core.config import settings
from src.core.errors import UnknownFixture
from src.main import cli, run
from src.services.fixtures import FixtureLoader

FIXTURES = settings.FIXTURES_DIR


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, data) -> str:
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test_validate(runner):
    result = runner.invoke(cli, ["validate", str(FIXTURES / "pgl2-torus.json")])
    assert result.exit_code == 0
    assert "no violations" in result.output

    result = runner.invoke(cli, ["validate", "pgl2-torus", "--json"])
    assert json.loads(result.output)["violations"] == []


def test_analyze_pgl2_torus(runner):
    result = runner.invoke(
        cli, ["analyze", str(FIXTURES / "pgl2-torus.json"), "--galois", str(FIXTURES / "gamma2-trivial.json"), "--json"]
    )
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["verdict"]["verdict"] == "Exists"
    assert report["count"]["count"] == 2
    assert report["verdict"]["rule"] == "spherically-closed-criterion"
    assert report["inner_form"]["inner_form"] is True
    assert report["inner_form"]["preservation_automatic"] is True


def test_analyze_weil_restriction_with_swap_demo(runner):
    result = runner.invoke(
        cli, ["analyze", "weil-restriction-so3", "--galois", "gamma2-swap", "--compose-swap", "--oracle", "--json"]
    )
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["verdict"]["verdict"] == "Exists"
    assert report["count"]["count"] == 1
    assert report["count"]["oracle_count"] == 1
    assert report["swap_demo"]["order"] == 4

    text = runner.invoke(cli, ["analyze", "weil-restriction-so3", "--compose-swap"])
    assert text.exit_code == 0
    assert "a o m_gamma" in text.output


def test_analyze_does_not_claim_a_model_for_the_shape_fixture(runner):
    result = runner.invoke(cli, ["analyze", "cex-group-variety-shape", "--json"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["verdict"]["verdict"] == "Inconclusive"
    assert report["count"] is None
    assert report["verdict"]["rule"] == "open-case"


def test_analyze_json_round_trips(runner, tmp_path):
    first = runner.invoke(cli, ["analyze", "weil-restriction-so3", "--json"])
    assert first.exit_code == 0
    path = write(tmp_path, "report.json", first.output)
    second = runner.invoke(cli, ["analyze", path, "--json"])
    assert second.exit_code == 0
    assert second.output == first.output


def test_count(runner):
    result = runner.invoke(cli, ["count", "pgl2-torus-product", "--galois", "gamma2-swap", "--oracle"])
    assert result.exit_code == 0
    assert "models:" in result.output

    result = runner.invoke(cli, ["count", "cex-group-variety-shape"])
    assert result.exit_code == 1
    assert "CountUndefined" in result.output


def test_malformed_input_exits_2(runner, tmp_path):
    assert runner.invoke(cli, ["validate", write(tmp_path, "broken.json", "{not json")]).exit_code == 2
    assert runner.invoke(cli, ["validate", write(tmp_path, "wrong.json", {"ambient_rank": "x"})]).exit_code == 2
    assert runner.invoke(cli, ["analyze", str(tmp_path / "missing.json")]).exit_code == 2
    assert runner.invoke(cli, ["check-fan", "pgl2-torus"]).exit_code == 2


def test_axiom_violations_exit_1_with_the_report(runner, tmp_path):
    datum = json.loads((FIXTURES / "pgl2-torus.json").read_text())
    datum["colors"] = datum["colors"][:1]
    path = write(tmp_path, "one-color.json", datum)
    result = runner.invoke(cli, ["analyze", path])
    assert result.exit_code == 1
    assert "violation" in result.output
    assert runner.invoke(cli, ["validate", path]).exit_code == 1


def test_internal_breach_exits_3(runner, tmp_path):
    datum = json.loads((FIXTURES / "pgl2-torus.json").read_text())
    datum["sigma_n_override"] = [[1]]
    result = runner.invoke(cli, ["analyze", write(tmp_path, "override.json", datum)])
    assert result.exit_code == 3
    assert "InvariantBreach" in result.output


def test_unknown_fixture(runner):
    result = runner.invoke(cli, ["analyze", "unknown"])
    assert result.exit_code == 1
    assert "UnknownFixture" in result.output


def test_fixtures_listing(runner):
    result = runner.invoke(cli, ["fixtures", "--json"])
    assert json.loads(result.output) == sorted([
        "cex-group-variety-shape",
        "pgl2-torus",
        "pgl2-torus-product",
        "self-normalizing-demo",
        "weil-restriction-so3",
    ])


def test_lift_cover(runner):
    result = runner.invoke(cli, ["lift-cover", "cover-swap", "--json"])
    assert result.exit_code == 0
    lift = json.loads(result.output)
    assert lift["lifts"]["1"] == {"d1": "d2", "d2": "d1"}
    assert lift["corrections"]["1"] == {"d1": "d1", "d2": "d2"}


def test_check_fan(runner):
    result = runner.invoke(
        cli, ["check-fan", "pgl2-torus-product", "--fan", "fan-product-symmetric", "--galois", "gamma2-swap", "--json"]
    )
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["stability"]["stable"] is True
    assert report["embedding"]["verdict"] == "HypothesesNotMet"
    assert report["embedding"]["rule"] == "embedding-criterion"
    assert report["embedding"]["failed"] == ["inner_form", "self_normalizing"]

    result = runner.invoke(cli, ["check-fan", "self-normalizing-demo", "--fan", "fan-self-normalizing"])
    assert result.exit_code == 0
    assert "ExistsUnique" in result.output
    assert "embedding-criterion" in result.output


def test_run_returns_exit_codes():
    assert run(["validate", "pgl2-torus"]) == 0
    assert run(["count", "cex-group-variety-shape"]) == 1


def test_load_fixture():
    bundle = FixtureLoader.load_fixture("weil-restriction-so3")
    assert bundle.galois is not None and not bundle.galois.is_trivial
    assert "shape-only" in FixtureLoader.load_fixture("cex-group-variety-shape").datum.notes
    with pytest.raises(UnknownFixture):
        FixtureLoader.load_fixture("unknown")


def test_text_report_names_rule_and_inner_form(runner):
    result = runner.invoke(cli, ["analyze", "self-normalizing-demo"])
    assert result.exit_code == 0
    assert "self-normalizing-criterion" in result.output
    assert "inner form:" in result.output
    assert "preservation for free:" in result.output

    swapped = runner.invoke(cli, ["analyze", "pgl2-torus-product", "--galois", "gamma2-swap"])
    assert swapped.exit_code == 0
    assert "spherically-closed-criterion" in swapped.output
    assert any(line.startswith("Dynkin automorphisms:") and line.split()[-1] == "2" for line in swapped.output.splitlines())


def test_non_integral_sigma_n_override_exits_2(runner, tmp_path):
    datum = json.loads((FIXTURES / "self-normalizing-demo.json").read_text())
    datum["sigma_n_override"] = [["1/2"]]
    result = runner.invoke(cli, ["analyze", write(tmp_path, "override.json", datum)])
    assert result.exit_code == 2
