"""Finite groups, *-actions and the existence verdict"""
from enum import Enum
from itertools import permutations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.errors import InvalidGroup, NotLatticeAutomorphism
from src.models.datum import OmegaPoint
from src.models.lattice import IntegerMatrix


def _generated(cayley: Sequence[Sequence[int]], identity: int, generators: Iterable[int]) -> FrozenSet[int]:
    found = {identity}
    frontier = [identity]
    generators = list(generators)
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = cayley[x][g]
            if y not in found:
                found.add(y)
                frontier.append(y)
    return frozenset(found)


def _greedy_generators(cayley: Sequence[Sequence[int]], identity: int, elements: Sequence[int]) -> Tuple[int, ...]:
    """Generators picked greedily, largest cyclic subgroup first"""
    def cyclic_size(x: int) -> int:
        return len(_generated(cayley, identity, [x]))

    chosen: List[int] = []
    span = frozenset({identity})
    for x in sorted(elements, key=lambda x: (-cyclic_size(x), x)):
        if x not in span:
            chosen.append(x)
            span = _generated(cayley, identity, chosen)
    return tuple(chosen)


class FiniteGroup(BaseModel):
    """A finite group given by its Cayley table on ids 0..order-1"""

    model_config = ConfigDict(frozen=True)

    name: Optional[str] = None
    order: int = Field(..., ge=1)
    cayley: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    generators: Tuple[int, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _fill_generators(cls, data):
        if isinstance(data, dict) and not data.get("generators") and data.get("cayley"):
            cayley = [tuple(row) for row in data["cayley"]]
            n = len(cayley)
            identity = data.get("identity", 0)
            if all(len(row) == n and all(isinstance(x, int) and 0 <= x < n for x in row) for row in cayley) and 0 <= identity < n:
                data = {**data, "generators": _greedy_generators(cayley, identity, range(n))}
        return data

    @model_validator(mode="after")
    def _check_group(self) -> "FiniteGroup":
        n = self.order
        if len(self.cayley) != n or any(len(row) != n for row in self.cayley):
            raise InvalidGroup(f"Cayley table must be {n}x{n}")
        if any(not 0 <= x < n for row in self.cayley for x in row):
            raise InvalidGroup("Cayley table entries must be element ids")
        if not 0 <= self.identity < n:
            raise InvalidGroup(f"identity {self.identity} is not an element id")
        e, t = self.identity, self.cayley
        if any(t[e][x] != x or t[x][e] != x for x in range(n)):
            raise InvalidGroup(f"{e} is not a two-sided identity")
        if any(sorted(row) != list(range(n)) for row in t):
            raise InvalidGroup("Cayley table rows are not permutations")
        for x in range(n):
            if e not in t[x]:
                raise InvalidGroup(f"{x} has no inverse")
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        raise InvalidGroup(f"multiplication is not associative at ({x}, {y}, {z})")
        if _generated(t, e, self.generators) != frozenset(range(n)):
            raise InvalidGroup(f"generators {self.generators} do not generate the group")
        return self

    @property
    def elements(self) -> range:
        return range(self.order)

    def multiply(self, x: int, y: int) -> int:
        return self.cayley[x][y]

    def inverse(self, x: int) -> int:
        return self.cayley[x].index(self.identity)

    def order_of(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.multiply(y, x)
            k += 1
        return k

    def closure(self, elements: Iterable[int]) -> FrozenSet[int]:
        return _generated(self.cayley, self.identity, elements)

    def subgroup(self, elements: Iterable[int]) -> "FiniteGroup":
        """The subgroup generated by ``elements``, relabelled 0..k-1 in increasing id order"""
        members = sorted(self.closure(elements))
        index = {x: i for i, x in enumerate(members)}
        cayley = [[index[self.multiply(x, y)] for y in members] for x in members]
        return FiniteGroup(
            name=f"subgroup of {self.name}" if self.name else None,
            order=len(members),
            cayley=cayley,
            identity=index[self.identity],
        )

    def relabel(self, permutation: Sequence[int]) -> "FiniteGroup":
        """Same group with element x renamed permutation[x]"""
        inverse = [0] * self.order
        for x, y in enumerate(permutation):
            inverse[y] = x
        cayley = [
            [permutation[self.multiply(inverse[a], inverse[b])] for b in self.elements] for a in self.elements
        ]
        return FiniteGroup(
            name=self.name,
            order=self.order,
            cayley=cayley,
            identity=permutation[self.identity],
            generators=tuple(permutation[g] for g in self.generators),
        )

    def coset_action(self, subgroup: Iterable[int]) -> Dict[int, Tuple[int, ...]]:
        """Left multiplication on the left cosets of ``subgroup``, cosets ordered by least element"""
        members = self.closure(subgroup)
        cosets = sorted({frozenset(self.multiply(g, h) for h in members) for g in self.elements}, key=min)
        index = {coset: i for i, coset in enumerate(cosets)}
        return {
            g: tuple(index[frozenset(self.multiply(g, x) for x in coset)] for coset in cosets)
            for g in self.elements
        }

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(name="1", order=1, cayley=[[0]], identity=0)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(
            name=f"Z/{n}",
            order=n,
            cayley=[[(i + j) % n for j in range(n)] for i in range(n)],
            generators=(1,) if n > 1 else (),
        )

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        m = h.order

        def pair(a: int, b: int) -> int:
            return a * m + b

        cayley = [
            [pair(g.multiply(a // m, b // m), h.multiply(a % m, b % m)) for b in range(g.order * m)]
            for a in range(g.order * m)
        ]
        generators = [pair(x, h.identity) for x in g.generators] + [pair(g.identity, y) for y in h.generators]
        return cls(
            name=f"{g.name} x {h.name}",
            order=g.order * m,
            cayley=cayley,
            identity=pair(g.identity, h.identity),
            generators=tuple(generators),
        )

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of the n-gon, order 2n; r^k s^f has id k + n*f"""
        def mul(a: int, b: int) -> int:
            (ka, fa), (kb, fb) = divmod(a, n)[::-1], divmod(b, n)[::-1]
            k = (ka + (kb if fa == 0 else -kb)) % n
            return k + n * ((fa + fb) % 2)

        return cls(
            name=f"D{n}",
            order=2 * n,
            cayley=[[mul(a, b) for b in range(2 * n)] for a in range(2 * n)],
            generators=(1 % n, n) if n > 1 else (n,),
        )

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        """Q8; unit u in (1, i, j, k) with sign s has id u + 4*s"""
        units = {
            (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
            (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
            (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
            (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
        }

        def mul(a: int, b: int) -> int:
            unit, sign = units[(a % 4, b % 4)]
            return unit + 4 * ((a // 4 + b // 4 + sign) % 2)

        return cls(name="Q8", order=8, cayley=[[mul(a, b) for b in range(8)] for a in range(8)], generators=(1, 2))

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        perms = list(permutations(range(3)))
        index = {p: i for i, p in enumerate(perms)}

        def mul(a: int, b: int) -> int:
            p, q = perms[a], perms[b]
            return index[tuple(p[q[i]] for i in range(3))]

        return cls(
            name="S3",
            order=6,
            cayley=[[mul(a, b) for b in range(6)] for a in range(6)],
            identity=index[(0, 1, 2)],
            generators=(index[(1, 0, 2)], index[(1, 2, 0)]),
        )


class GaloisAction(BaseModel):
    """epsilon: Gamma -> Aut(X*(T)) through a finite quotient Gamma"""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "group": {"order": 2, "cayley": [[0, 1], [1, 0]], "identity": 0, "generators": [1]},
                "eps": {"0": [[1, 0], [0, 1]], "1": [[0, 1], [1, 0]]},
            }
        },
    )

    name: Optional[str] = None
    group: FiniteGroup
    eps: Dict[int, IntegerMatrix]

    @model_validator(mode="after")
    def _check_homomorphism(self) -> "GaloisAction":
        from src.services.lattice import LatticeService

        g = self.group
        missing = [x for x in g.elements if x not in self.eps]
        if missing or set(self.eps) - set(g.elements):
            raise InvalidGroup(f"eps must give a matrix for each of the {g.order} elements exactly")
        sizes = {(m.rows, m.cols) for m in self.eps.values()}
        if len(sizes) != 1 or any(r != c for r, c in sizes):
            raise InvalidGroup("eps matrices must be square and of one size")
        for x, m in self.eps.items():
            if not LatticeService.is_unimodular(m):
                raise NotLatticeAutomorphism(f"eps[{x}] = {m.to_rows()} is not unimodular")
        for x in g.elements:
            for y in g.elements:
                if self.eps[g.multiply(x, y)] != self.eps[x] @ self.eps[y]:
                    raise InvalidGroup(f"eps is not a homomorphism at ({x}, {y})")
        return self

    @property
    def ambient_rank(self) -> int:
        return next(iter(self.eps.values())).rows

    @property
    def is_trivial(self) -> bool:
        return all(m.is_identity() for m in self.eps.values())

    @classmethod
    def trivial(cls, group: FiniteGroup, rank: int, name: Optional[str] = None) -> "GaloisAction":
        return cls(name=name, group=group, eps={x: IntegerMatrix.identity(rank) for x in group.elements})


class ElementPreservation(BaseModel):
    model_config = ConfigDict(frozen=True)

    element: int
    weight_lattice: bool
    spherical_roots: bool
    omega1: bool
    omega2: bool

    @property
    def preserved(self) -> bool:
        return self.weight_lattice and self.spherical_roots and self.omega1 and self.omega2


class PreservationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    elements: Tuple[ElementPreservation, ...]

    @property
    def preserved(self) -> bool:
        return all(e.preserved for e in self.elements)

    @property
    def failing(self) -> List[int]:
        return [e.element for e in self.elements if not e.preserved]


class OmegaOrbit(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: Tuple[OmegaPoint, ...]
    base_point: OmegaPoint
    stabilizer: Tuple[int, ...]


class Verdict(str, Enum):
    NO_EQUIVARIANT_MODEL = "NoEquivariantModel"
    EXISTS_UNIQUE = "ExistsUnique"
    EXISTS = "Exists"
    INCONCLUSIVE = "Inconclusive"


class Rule(str, Enum):
    """Stable tag of the criterion a verdict rests on"""

    NECESSARY_CONDITION = "necessary-condition"
    SELF_NORMALIZING = "self-normalizing-criterion"
    SPHERICALLY_CLOSED = "spherically-closed-criterion"
    OPEN_CASE = "open-case"
    EMBEDDING = "embedding-criterion"


class InnerFormProfile(BaseModel):
    """Whether the preservation condition holds for free.

    It does when the action is inner (every eps_gamma is the identity), and
    when the group is semisimple with a Dynkin diagram that has no
    automorphism besides the identity. Split groups are inner forms.
    """

    model_config = ConfigDict(frozen=True)

    inner_form: bool
    semisimple: bool
    diagram_automorphisms: int
    preservation_automatic: bool
    reason: str


class ExistenceVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    rule: Rule
    citation: str
    reason: str
    quotient_order: int
    note: str = "relative to the supplied finite quotient of the Galois group"
