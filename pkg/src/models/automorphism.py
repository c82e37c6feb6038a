"""Characters of the weight lattice and the Aut^G(Y) profile"""
from fractions import Fraction
from math import lcm
from typing import Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from src.models.lattice import AbelianInvariants, IntVector, RationalVector, Sublattice, parse_rational


class TorsionCharacter(BaseModel):
    """A homomorphism psi from the weight lattice to Q/Z.

    ``values`` are the values on the weight basis, reduced into [0, 1); a
    value of 1/2 plays the role of -1 in k^x.
    """

    model_config = ConfigDict(frozen=True)

    values: RationalVector

    @model_validator(mode="before")
    @classmethod
    def _reduce(cls, data):
        if isinstance(data, dict) and "values" in data:
            data = {**data, "values": tuple(parse_rational(v) % 1 for v in data["values"])}
        return data

    @classmethod
    def zero(cls, rank: int) -> "TorsionCharacter":
        return cls(values=(Fraction(0),) * rank)

    @property
    def order(self) -> int:
        return lcm(1, *(v.denominator for v in self.values))

    def __call__(self, coords: Sequence[int]) -> Fraction:
        return sum((v * c for v, c in zip(self.values, coords)), Fraction(0)) % 1

    def __add__(self, other: "TorsionCharacter") -> "TorsionCharacter":
        return TorsionCharacter(values=tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, k: int) -> "TorsionCharacter":
        return TorsionCharacter(values=tuple(k * v for v in self.values))


class AutProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    sigma_N: Tuple[IntVector, ...]
    lattice_lambda: Sublattice
    lattice_lambda_bar: Sublattice
    character_group: AbelianInvariants
    self_normalizing: bool
    spherically_closed: bool
    closedness_rule: str = "derived: spherically closed iff <Sigma^N ∪ A> is the whole weight lattice"