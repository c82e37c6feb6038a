"""Input bundles and the reports emitted by the CLI"""
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from src.models.automorphism import AutProfile
from src.models.cohomology import ModelCount
from src.models.datum import HomogeneousSphericalDatum, ValidationReport
from src.models.fan import ColoredFan, EmbeddingVerdict, StabilityReport
from src.models.galois import (
    ExistenceVerdict,
    GaloisAction,
    InnerFormProfile,
    OmegaOrbit,
    PreservationReport,
    Verdict,
)


class Bundle(BaseModel):
    """A datum with the optional *-action and colored fan that travel with it"""

    model_config = ConfigDict(frozen=True)

    datum: HomogeneousSphericalDatum
    galois: Optional[GaloisAction] = None
    fan: Optional[ColoredFan] = None


class OmegaSizes(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega: int
    omega1: int
    omega2: int


class SwapDemo(BaseModel):
    """a o m_gamma for the lexicographic lift m_gamma and the swap a of one color pair"""

    model_config = ConfigDict(frozen=True)

    element: int
    swapped_root: str
    m_gamma: Dict[str, str]
    a: Dict[str, str]
    composed: Dict[str, str]
    order: int


class AnalysisReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    datum: HomogeneousSphericalDatum
    galois: GaloisAction
    validation: ValidationReport
    omega: Optional[OmegaSizes] = None
    aut: Optional[AutProfile] = None
    inner_form: Optional[InnerFormProfile] = None
    preservation: Optional[PreservationReport] = None
    orbits: Tuple[OmegaOrbit, ...] = ()
    verdict: Optional[ExistenceVerdict] = None
    count: Optional[ModelCount] = None
    swap_demo: Optional[SwapDemo] = None

    @model_validator(mode="after")
    def _count_iff_model_exists(self) -> "AnalysisReport":
        exists = self.verdict is not None and self.verdict.verdict in (Verdict.EXISTS, Verdict.EXISTS_UNIQUE)
        if exists != (self.count is not None):
            raise ValueError("a model count is reported exactly when a model exists")
        return self


class FanReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    fan: ColoredFan
    stability: Optional[StabilityReport] = None
    embedding: EmbeddingVerdict
