"""Integer matrices, sublattices and finitely generated abelian groups"""
from fractions import Fraction
from typing import Annotated, Any, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator
from pydantic_core import core_schema

IntVector = Tuple[int, ...]


def parse_rational(value: Any) -> Fraction:
    """Accept an int, a Fraction or a ``"p/q"`` string"""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"expected an integer or a 'p/q' string, got {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


class _RationalAnnotation:
    @classmethod
    def __get_pydantic_core_schema__(cls, source, handler):
        return core_schema.no_info_plain_validator_function(
            parse_rational,
            serialization=core_schema.plain_serializer_function_ser_schema(
                format_rational, when_used="json"
            ),
        )

    @classmethod
    def __get_pydantic_json_schema__(cls, schema, handler):
        return {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}


Rational = Annotated[Fraction, _RationalAnnotation]
RationalVector = Tuple[Rational, ...]


class IntegerMatrix(BaseModel):
    """Dense integer matrix in row-major order.

    Accepts either ``{"rows", "cols", "entries"}`` or a list of rows and
    serialises to a list of rows.
    """

    model_config = ConfigDict(frozen=True)

    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: IntVector

    @model_validator(mode="before")
    @classmethod
    def _accept_row_lists(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            rows = [list(r) for r in data]
            cols = len(rows[0]) if rows else 0
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged matrix rows")
            return {"rows": len(rows), "cols": cols, "entries": [x for r in rows for x in r]}
        return data

    @model_validator(mode="after")
    def _check_shape(self) -> "IntegerMatrix":
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        return self

    @model_serializer
    def _as_rows(self) -> List[List[int]]:
        return self.to_rows()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(rows=len(rows), cols=width, entries=tuple(x for r in rows for x in r))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntegerMatrix":
        r, c = array.shape
        return cls(rows=r, cols=c, entries=tuple(int(x) for x in array.reshape(-1)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    def to_rows(self) -> List[List[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def as_array(self) -> np.ndarray:
        array = np.empty((self.rows, self.cols), dtype=object)
        for i in range(self.rows):
            for j in range(self.cols):
                array[i, j] = self.entries[i * self.cols + j]
        return array

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        product = np.empty((self.rows, other.cols), dtype=object)
        for i in range(self.rows):
            for j in range(other.cols):
                product[i, j] = sum(self[i, k] * other[k, j] for k in range(self.cols))
        return IntegerMatrix.from_array(product)

    def apply(self, vector: Sequence[int]) -> IntVector:
        """Matrix times column vector"""
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} does not fit {self.rows}x{self.cols}")
        return tuple(sum(self[i, k] * vector[k] for k in range(self.cols)) for i in range(self.rows))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows
        )

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == int(i == j) for i in range(self.rows) for j in range(self.cols)
        )


class Sublattice(BaseModel):
    """Subgroup of Z^ambient_rank spanned by ``generators``.

    ``basis`` is the Hermite-reduced basis, recomputed on construction, so two
    sublattices are equal exactly when their ambient ranks and bases agree.
    """

    model_config = ConfigDict(frozen=True)

    ambient_rank: int = Field(..., ge=0)
    generators: Tuple[IntVector, ...] = ()
    basis: Tuple[IntVector, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        from src.services.lattice import LatticeService

        if not isinstance(data, dict):
            return data
        rank = int(data["ambient_rank"])
        generators = tuple(tuple(int(x) for x in g) for g in data.get("generators", ()))
        for g in generators:
            if len(g) != rank:
                raise ValueError(f"generator {g} does not lie in Z^{rank}")
        return {"ambient_rank": rank, "generators": generators, "basis": LatticeService.hermite_basis(generators, rank)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        """True when the sublattice is all of Z^ambient_rank"""
        return self.basis == tuple(
            tuple(int(i == j) for j in range(self.ambient_rank)) for i in range(self.ambient_rank)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.basis))


class AbelianInvariants(BaseModel):
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and d_i >= 2"""

    model_config = ConfigDict(frozen=True)

    torsion: Tuple[int, ...] = ()
    free_rank: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_chain(self) -> "AbelianInvariants":
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion factor {d} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion factors {self.torsion} do not form a divisibility chain")
        return self

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def torsion_order(self) -> int:
        order = 1
        for d in self.torsion:
            order *= d
        return order

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"
