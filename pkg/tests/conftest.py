import pytest

from src.models.galois import FiniteGroup
from src.services.fixtures import CATALOG, FixtureLoader


@pytest.fixture
def pgl2_torus():
    return FixtureLoader.load_fixture("pgl2-torus").datum


@pytest.fixture
def product_datum():
    return FixtureLoader.load_fixture("pgl2-torus-product").datum


@pytest.fixture
def self_normalizing():
    return FixtureLoader.load_fixture("self-normalizing-demo").datum


@pytest.fixture
def cex_bundle():
    return FixtureLoader.load_fixture("cex-group-variety-shape")


@pytest.fixture
def weil_bundle():
    return FixtureLoader.load_fixture("weil-restriction-so3")


@pytest.fixture
def catalog_data():
    return [FixtureLoader.load_fixture(name).datum for name in CATALOG]


@pytest.fixture
def z2():
    return FiniteGroup.cyclic(2)


@pytest.fixture
def trivial_z2_rank1():
    return FixtureLoader.load_action("gamma2-trivial")


@pytest.fixture
def swap_z2():
    return FixtureLoader.load_action("gamma2-swap")


@pytest.fixture
def symmetric_fan():
    return FixtureLoader.load_fan("fan-product-symmetric")


@pytest.fixture
def asymmetric_fan():
    return FixtureLoader.load_fan("fan-product-asymmetric")
