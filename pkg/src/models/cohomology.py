"""Gamma-modules, model counts and permutation-cover problems"""
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.galois import FiniteGroup

Permutation = Dict[str, str]


def _is_bijection(permutation: Permutation, domain) -> bool:
    return set(permutation) == set(domain) and set(permutation.values()) == set(domain)


class InducedTwoModule(BaseModel):
    """Map(index_set, Z/2) with Gamma permuting coordinates.

    ``gamma_action[g][i]`` is the index that coordinate ``i`` is sent to.
    """

    model_config = ConfigDict(frozen=True)

    index_set: Tuple[str, ...]
    gamma_action: Dict[int, Tuple[int, ...]]

    @model_validator(mode="after")
    def _check_permutations(self) -> "InducedTwoModule":
        n = len(self.index_set)
        for g, permutation in self.gamma_action.items():
            if sorted(permutation) != list(range(n)):
                raise ValueError(f"gamma_action[{g}] is not a permutation of {n} coordinates")
        return self

    @property
    def rank(self) -> int:
        return len(self.index_set)


class OrbitFactor(BaseModel):
    model_config = ConfigDict(frozen=True)

    base_point: str
    points: Tuple[str, ...]
    stabilizer: Tuple[int, ...]
    homs_to_2: int

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


class ModelCount(BaseModel):
    """Number of equivariant models: the product of |Hom(Gamma_i, Z/2)| over orbits on Omega(2)"""

    model_config = ConfigDict(frozen=True)

    count: int = Field(..., ge=1)
    orbits: Tuple[OrbitFactor, ...] = ()
    quotient_order: int
    oracle_count: Optional[int] = None
    note: str = (
        "counted for the supplied finite quotient; over a profinite Galois group the count is "
        "the product of Hom(Gamma_i, Z/2) over the listed orbits"
    )


class CoverProblem(BaseModel):
    """zeta: D -> Omega, s: Gamma -> Aut(Omega) and covers m_gamma of s_gamma.

    ``s`` and ``covers`` may be given on a generating set only.
    """

    model_config = ConfigDict(frozen=True)

    group: FiniteGroup
    zeta: Dict[str, str]
    s: Dict[int, Permutation]
    covers: Dict[int, Permutation] = {}

    @model_validator(mode="after")
    def _check_maps(self) -> "CoverProblem":
        omega = self.omega
        for g, permutation in self.s.items():
            if not 0 <= g < self.group.order:
                raise ValueError(f"s is given on unknown element {g}")
            if not _is_bijection(permutation, omega):
                raise ValueError(f"s[{g}] is not a permutation of Omega")
        for g, permutation in self.covers.items():
            if not 0 <= g < self.group.order:
                raise ValueError(f"cover given for unknown element {g}")
            if not _is_bijection(permutation, self.zeta):
                raise ValueError(f"cover m[{g}] is not a permutation of D")
        return self

    @property
    def omega(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.zeta.values())))

    def fiber(self, point: str) -> Tuple[str, ...]:
        return tuple(sorted(name for name, value in self.zeta.items() if value == point))


class CoverLift(BaseModel):
    """m' with m'_gamma covering s_gamma, and a_gamma = m'_gamma o m_gamma^-1 for each supplied cover"""

    model_config = ConfigDict(frozen=True)

    lifts: Dict[int, Permutation]
    corrections: Dict[int, Permutation]
    labeling: Dict[str, Tuple[str, ...]]
