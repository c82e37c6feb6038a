"""Built-in fixtures and loading of datum, action and fan files"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Type, TypeVar

from pydantic import BaseModel, ValidationError

from src.core.config import settings
from src.core.errors import AxiomViolation, MalformedInput, UnknownFixture
from src.models.datum import HomogeneousSphericalDatum
from src.models.fan import ColoredFan
from src.models.galois import GaloisAction
from src.models.report import Bundle
from src.services.spherical_data import SphericalDataService

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

CATALOG: Dict[str, str] = {
    "pgl2-torus": "PGL2/T: X = Z alpha, Sigma = {alpha}, two colors sharing rho",
    "pgl2-torus-product": "(PGL2/T)^2: two independent blocks",
    "weil-restriction-so3": "product datum with Gamma = Z/2 swapping the blocks",
    "cex-group-variety-shape": "shape-only datum: Omega(2) empty, Lambda of index 2 (not a real group-variety datum)",
    "self-normalizing-demo": "Lambda = X, one color",
}


class FixtureLoader:
    """Reads datum, action and fan documents from files or the built-in catalog"""

    @staticmethod
    def read_json(path: Path) -> Any:
        try:
            return json.loads(path.read_text())
        except OSError as exc:
            raise MalformedInput(f"cannot read {path}: {exc.strerror or exc}") from exc
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc

    @staticmethod
    def parse_model(model: Type[ModelT], data: Any, source: str) -> ModelT:
        """
        Validate ``data`` against ``model``.
        pydantic errors are flattened into one MalformedInput naming every bad field.
        """
        try:
            return model.model_validate(data)
        except ValidationError as exc:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in error['loc']) or '<root>'}: {error['msg']}" for error in exc.errors()
            )
            raise MalformedInput(f"{source}: {problems}") from exc

    @staticmethod
    def resolve(reference: str) -> Path:
        """A path, or the name of a file in the fixtures directory"""
        path = Path(reference)
        if path.is_file():
            return path
        for candidate in (settings.FIXTURES_DIR / reference, settings.FIXTURES_DIR / f"{reference}.json"):
            if candidate.is_file():
                return candidate
        if path.suffix or len(path.parts) > 1:
            raise MalformedInput(f"no such file: {reference}")
        raise UnknownFixture(f"unknown fixture {reference!r}; known: {', '.join(CATALOG)}")

    @staticmethod
    def load_bundle(reference: str) -> Bundle:
        """A bare datum or a ``{"datum", "galois", "fan"}`` bundle"""
        path = FixtureLoader.resolve(reference)
        data = FixtureLoader.read_json(path)
        if isinstance(data, dict) and "datum" in data:
            return FixtureLoader.parse_model(Bundle, data, str(path))
        return Bundle(datum=FixtureLoader.parse_model(HomogeneousSphericalDatum, data, str(path)))

    @staticmethod
    def load_action(reference: str) -> GaloisAction:
        path = FixtureLoader.resolve(reference)
        data = FixtureLoader.read_json(path)
        if isinstance(data, dict) and "galois" in data:
            data = data["galois"]
        return FixtureLoader.parse_model(GaloisAction, data, str(path))

    @staticmethod
    def load_fan(reference: str) -> ColoredFan:
        """A fan document, a bare list of cones, or the ``fan`` entry of a bundle"""
        path = FixtureLoader.resolve(reference)
        data = FixtureLoader.read_json(path)
        if isinstance(data, list):
            data = {"cones": data}
        elif isinstance(data, dict) and "fan" in data:
            data = data["fan"]
        return FixtureLoader.parse_model(ColoredFan, data, str(path))

    @staticmethod
    def load_fixture(name: str) -> Bundle:
        """
        A catalog fixture, parsed and validated.
        A fixture that fails validation raises AxiomViolation, since shipped
        data is expected to be consistent.
        """
        if name not in CATALOG:
            raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(CATALOG)}")
        bundle = FixtureLoader.load_bundle(str(settings.FIXTURES_DIR / f"{name}.json"))
        report = SphericalDataService.validate(bundle.datum)
        if not report.is_valid:
            raise AxiomViolation(f"fixture {name} fails {sorted(t.value for t in report.tags)}")
        logger.debug(f"✓ loaded fixture {name}")
        return bundle
