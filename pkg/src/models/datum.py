"""Homogeneous spherical datum and its derived invariants"""
from enum import Enum
from fractions import Fraction
from typing import Annotated, Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, field_serializer

from src.models.lattice import IntVector, RationalVector

# serialised sorted so that reports are byte-stable
LabelSet = Annotated[FrozenSet[str], PlainSerializer(sorted, return_type=List[str])]


class SimpleRoot(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    vector: IntVector


class Color(BaseModel):
    """A color D with rho(D) given by its values on the weight basis"""

    model_config = ConfigDict(frozen=True)

    name: str
    rho: RationalVector
    moved_by: LabelSet


class HomogeneousSphericalDatum(BaseModel):
    """Weight lattice, simple (co)roots, spherical roots and colors.

    ``weight_basis`` and ``simple_roots`` live in X*(T) = Z^ambient_rank,
    ``spherical_roots`` and ``sigma_n_override`` are written in coordinates
    of ``weight_basis``, and each ``rho`` is a covector on those coordinates.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "name": "pgl2-torus",
                "ambient_rank": 1,
                "weight_basis": [[1]],
                "simple_roots": [{"label": "alpha", "vector": [1]}],
                "simple_coroots": [[2]],
                "spherical_roots": [[1]],
                "colors": [
                    {"name": "D+", "rho": ["1"], "moved_by": ["alpha"]},
                    {"name": "D-", "rho": ["1"], "moved_by": ["alpha"]},
                ],
            }
        },
    )

    name: Optional[str] = None
    notes: Optional[str] = None
    ambient_rank: int = Field(..., ge=0)
    weight_basis: Tuple[IntVector, ...]
    simple_roots: Tuple[SimpleRoot, ...]
    simple_coroots: Tuple[IntVector, ...]
    spherical_roots: Tuple[IntVector, ...] = ()
    colors: Tuple[Color, ...]
    sigma_n_override: Optional[Tuple[IntVector, ...]] = None

    @property
    def rank(self) -> int:
        """Rank of the weight lattice"""
        return len(self.weight_basis)

    @property
    def root_labels(self) -> List[str]:
        return [root.label for root in self.simple_roots]

    def root(self, label: str) -> SimpleRoot:
        return next(root for root in self.simple_roots if root.label == label)

    def coroot(self, label: str) -> IntVector:
        return self.simple_coroots[self.root_labels.index(label)]

    def cartan_matrix(self) -> List[List[int]]:
        """Entry [i][j] is <alpha_j, alpha_i^vee>, rows and columns in ``root_labels`` order"""
        return [
            [sum(a * b for a, b in zip(root.vector, coroot)) for root in self.simple_roots]
            for coroot in self.simple_coroots
        ]

    def color(self, name: str) -> Color:
        return next(color for color in self.colors if color.name == name)

    def to_ambient(self, coords: IntVector) -> IntVector:
        """Weight-lattice coordinates -> X*(T)"""
        return tuple(
            sum(c * w[i] for c, w in zip(coords, self.weight_basis)) for i in range(self.ambient_rank)
        )

    def coroot_on_weights(self, label: str) -> Tuple[Fraction, ...]:
        """alpha^vee restricted to the weight lattice, as values on the weight basis"""
        coroot = self.coroot(label)
        return tuple(Fraction(sum(a * b for a, b in zip(coroot, w))) for w in self.weight_basis)


class AxiomTag(str, Enum):
    # structural
    DIMENSION = "dimension"
    WEIGHT_BASIS_INDEPENDENT = "weight-basis-independent"
    CARTAN_MATRIX = "cartan-matrix"
    ROOT_LABELS_DISTINCT = "root-labels-distinct"
    COLOR_NAMES_DISTINCT = "color-names-distinct"
    MOVED_BY_NONEMPTY = "moved-by-nonempty"
    UNKNOWN_SIMPLE_ROOT = "unknown-simple-root"
    # color axioms
    COLORS_PER_ROOT = "colors-per-root"
    PAIR_IFF_SPHERICAL_SIMPLE_ROOT = "pair-iff-spherical-simple-root"
    PAIR_RHO_SUM = "pair-rho-sum"
    PAIR_RHO_ON_MOVED_ROOT = "pair-rho-on-moved-root"
    SHARED_PAIR_MOVED_BY = "shared-pair-moved-by"
    SPHERICAL_ROOT_PRIMITIVE = "spherical-root-primitive"
    SPHERICAL_ROOTS_INDEPENDENT = "spherical-roots-independent"


STRUCTURAL_TAGS = frozenset({
    AxiomTag.DIMENSION,
    AxiomTag.WEIGHT_BASIS_INDEPENDENT,
    AxiomTag.CARTAN_MATRIX,
    AxiomTag.ROOT_LABELS_DISTINCT,
    AxiomTag.COLOR_NAMES_DISTINCT,
    AxiomTag.MOVED_BY_NONEMPTY,
    AxiomTag.UNKNOWN_SIMPLE_ROOT,
})


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    tag: AxiomTag
    subject: str = Field(..., description="Root label, color name or field the violation is about")
    message: str


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    violations: Tuple[Violation, ...] = ()
    check_set: str = "partial"
    note: str = "structural checks and the color axioms only; the full homogeneous spherical datum axioms are not checked"

    @property
    def is_valid(self) -> bool:
        return not self.violations

    @property
    def tags(self) -> FrozenSet[AxiomTag]:
        return frozenset(v.tag for v in self.violations)


class OmegaPoint(BaseModel):
    """A point (rho, varsigma) of V x P(S)"""

    model_config = ConfigDict(frozen=True)

    rho_value: RationalVector
    moved_by: LabelSet

    @property
    def sort_key(self) -> Tuple:
        return (tuple(self.rho_value), tuple(sorted(self.moved_by)))

    @property
    def key(self) -> str:
        rho = ",".join(str(x) for x in self.rho_value)
        return f"({rho};{{{','.join(sorted(self.moved_by))}}})"


class OmegaDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    zeta: Dict[str, OmegaPoint]
    omega1: FrozenSet[OmegaPoint]
    omega2: FrozenSet[OmegaPoint]

    @field_serializer("omega1", "omega2")
    def _sorted_points(self, points: FrozenSet[OmegaPoint]) -> List[OmegaPoint]:
        return sorted(points, key=lambda p: p.sort_key)

    @property
    def omega(self) -> FrozenSet[OmegaPoint]:
        return self.omega1 | self.omega2

    def fiber(self, point: OmegaPoint) -> List[str]:
        """Colors over ``point``, sorted by name"""
        return sorted(name for name, value in self.zeta.items() if value == point)

    def sorted_omega2(self) -> List[OmegaPoint]:
        return sorted(self.omega2, key=lambda p: p.sort_key)


class Halfspace(BaseModel):
    """{v in V : <v, normal> <= 0}"""

    model_config = ConfigDict(frozen=True)

    normal: IntVector


class SetA(BaseModel):
    """Simple roots with a color pair sharing rho, and their points of Omega^(2)"""

    model_config = ConfigDict(frozen=True)

    roots: Tuple[str, ...]
    bijection: Dict[str, OmegaPoint]
    pairs: Dict[str, Tuple[str, str]]
