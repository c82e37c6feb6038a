"""Colored cones and colored fans"""
from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.models.datum import LabelSet
from src.models.galois import Rule
from src.models.lattice import IntVector, RationalVector


class ColoredCone(BaseModel):
    """(C, F): C spanned by ``generators`` in V (coordinates dual to the weight basis), F a set of colors"""

    model_config = ConfigDict(frozen=True)

    generators: Tuple[RationalVector, ...]
    colors: LabelSet = frozenset()


class ColoredFan(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "name": "positive-quadrant",
                "cones": [{"generators": [["1", "0"], ["0", "1"]], "colors": ["D1+", "D1-"]}],
            }
        },
    )

    name: Optional[str] = None
    cones: Tuple[ColoredCone, ...] = ()
    # element id -> color permutation, needed when F splits a two-color fiber
    color_permutations: Dict[int, Dict[str, str]] = {}


class CanonicalCone(BaseModel):
    """A pointed colored cone given by its primitive extreme rays in increasing order"""

    model_config = ConfigDict(frozen=True)

    rays: Tuple[IntVector, ...]
    colors: LabelSet = frozenset()


class ConeFailure(BaseModel):
    model_config = ConfigDict(frozen=True)

    cone: int = Field(..., description="Index of the cone in the fan")
    element: int
    cone_moved: bool
    colors_moved: bool
    image: CanonicalCone


class StabilityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    stable: bool
    fan_permuted: bool
    cones: Tuple[CanonicalCone, ...]
    failures: Tuple[ConeFailure, ...] = ()
    checked_elements: Tuple[int, ...]
    axioms: str = "unchecked"


class Hypothesis(str, Enum):
    INNER_FORM = "inner_form"
    SELF_NORMALIZING = "self_normalizing"
    GAMMA_STABLE = "gamma_stable"


class EmbeddingOutcome(str, Enum):
    EXISTS_UNIQUE = "ExistsUnique"
    HYPOTHESES_NOT_MET = "HypothesesNotMet"


class EmbeddingVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: EmbeddingOutcome
    failed: Tuple[Hypothesis, ...] = ()
    rule: Rule = Rule.EMBEDDING
    citation: str = (
        "inner form, N_G(H) = H and a Gamma-stable colored fan give a unique equivariant model of the embedding"
    )
    notes: Tuple[str, ...] = ()
