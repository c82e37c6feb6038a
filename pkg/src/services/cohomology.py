"""Counting equivariant models through H^1(Gamma, Aut_Omega(D)).

Aut_Omega(D) is the product of Z/2 over the points of Omega(2), permuted by
Gamma, so H^1 splits as a product of Hom(Gamma_i, Z/2) over the orbits.
"""
import logging
from itertools import product
from typing import Dict, Optional

from src.core.config import settings
from src.core.errors import (
    CountUndefined,
    FiberMismatch,
    InconsistentCover,
    InvalidGroup,
    InvariantBreach,
    MissingCover,
    TooLarge,
)
from src.models.cohomology import (
    CoverLift,
    CoverProblem,
    InducedTwoModule,
    ModelCount,
    OrbitFactor,
    Permutation,
)
from src.models.datum import HomogeneousSphericalDatum
from src.models.galois import FiniteGroup, GaloisAction, Verdict
from src.services.automorphisms import AutomorphismService
from src.services.galois import GaloisService
from src.services.spherical_data import SphericalDataService

logger = logging.getLogger(__name__)




def _act(permutation, mask: int) -> int:
    image = 0
    for i, j in enumerate(permutation):
        if mask >> i & 1:
            image |= 1 << j
    return image


class CohomologyService:
    """
    Counting models through H^1 and lifting permutation covers
    The count uses the product formula over orbits on Omega(2); the brute-force
    cocycle enumeration is kept as an oracle for small groups
    """

    @staticmethod
    def hom_to_2(g: FiniteGroup) -> int:
        """|Hom(g, Z/2)| by trying every assignment of signs to the generators"""
        count = 0
        for bits in product((0, 1), repeat=len(g.generators)):
            value = {g.identity: 0}
            frontier = [g.identity]
            consistent = True
            while frontier and consistent:
                x = frontier.pop()
                for generator, bit in zip(g.generators, bits):
                    y = g.multiply(x, generator)
                    if y not in value:
                        value[y] = value[x] ^ bit
                        frontier.append(y)
                    elif value[y] != value[x] ^ bit:
                        consistent = False
                        break
            if consistent and all(
                value[g.multiply(x, y)] == value[x] ^ value[y] for x in g.elements for y in g.elements
            ):
                count += 1
        return count

    @staticmethod
    def count_from_action(group: FiniteGroup, module: InducedTwoModule) -> ModelCount:
        """
        Product of |Hom(Stab(base), Z/2)| over the orbits of ``group`` on the index set.
        Each orbit is reported with its least index as base point.
        """
        seen, orbits, count = set(), [], 1
        for base in range(module.rank):
            if base in seen:
                continue
            points = sorted({module.gamma_action[g][base] for g in group.elements})
            seen.update(points)
            stabilizer = tuple(g for g in group.elements if module.gamma_action[g][base] == base)
            factor = CohomologyService.hom_to_2(group.subgroup(stabilizer))
            count *= factor
            orbits.append(
                OrbitFactor(
                    base_point=module.index_set[base],
                    points=tuple(module.index_set[i] for i in points),
                    stabilizer=stabilizer,
                    homs_to_2=factor,
                )
            )
        return ModelCount(count=count, orbits=tuple(orbits), quotient_order=group.order)

    @staticmethod
    def h1_bruteforce(m: InducedTwoModule, g: FiniteGroup) -> int:
        """
        |Z^1| / |B^1| by enumerating cocycles from their values on the generators.
        Only small cases are accepted: the group order and the module rank are
        bounded by ORACLE_MAX_GROUP_ORDER and ORACLE_MAX_MODULE_RANK, beyond
        which TooLarge is raised.
        """
        if g.order > settings.ORACLE_MAX_GROUP_ORDER or m.rank > settings.ORACLE_MAX_MODULE_RANK:
            raise TooLarge(
                f"|Gamma| = {g.order}, rank {m.rank}; the oracle handles |Gamma| <= "
                f"{settings.ORACLE_MAX_GROUP_ORDER} and rank <= {settings.ORACLE_MAX_MODULE_RANK}"
            )
        action = m.gamma_action
        cocycles = 0
        for values in product(range(1 << m.rank), repeat=len(g.generators)):
            z = {g.identity: 0}
            frontier = [g.identity]
            consistent = True
            while frontier and consistent:
                x = frontier.pop()
                for generator, value in zip(g.generators, values):
                    y = g.multiply(x, generator)
                    # z(xs) = z(x) + x.z(s)
                    expected = z[x] ^ _act(action[x], value)
                    if y not in z:
                        z[y] = expected
                        frontier.append(y)
                    elif z[y] != expected:
                        consistent = False
                        break
            if consistent and all(
                z[g.multiply(x, y)] == z[x] ^ _act(action[x], z[y]) for x in g.elements for y in g.elements
            ):
                cocycles += 1

        coboundaries = {
            tuple(_act(action[x], mask) ^ mask for x in g.elements) for mask in range(1 << m.rank)
        }
        if cocycles % len(coboundaries):
            raise InvariantBreach(f"{cocycles} cocycles is not a multiple of {len(coboundaries)} coboundaries")
        logger.debug(f"h1 oracle: |Z1| = {cocycles}, |B1| = {len(coboundaries)}")
        return cocycles // len(coboundaries)

    @staticmethod
    def induced_module(d: HomogeneousSphericalDatum, a: GaloisAction) -> InducedTwoModule:
        """Aut_Omega(D) as Map(Omega(2), Z/2), coordinates ordered by point"""
        points = SphericalDataService.omega_decomposition(d).sorted_omega2()
        index = {p: i for i, p in enumerate(points)}
        gamma_action = {}
        for x in a.group.elements:
            images = GaloisService.omega_action(d, a, x)
            try:
                gamma_action[x] = tuple(index[images[p]] for p in points)
            except KeyError:
                raise InvariantBreach(f"eps[{x}] does not preserve Omega(2)")
        return InducedTwoModule(index_set=tuple(p.key for p in points), gamma_action=gamma_action)

    @staticmethod
    def count_models(d: HomogeneousSphericalDatum, a: GaloisAction, oracle: bool = False) -> ModelCount:
        """
        Number of G0-equivariant models up to isomorphism, when one exists.
        The Omega(2) coordinates of Aut_Omega(D) are permuted by Gamma, so the count is
        the product of |Hom(Gamma_i, Z/2)| over the orbits, Gamma_i a stabilizer.
        With ``oracle`` the count is recomputed by cocycle enumeration and any
        disagreement raises InvariantBreach.
        """
        verdict = GaloisService.existence_verdict(d, a).verdict
        if verdict not in (Verdict.EXISTS, Verdict.EXISTS_UNIQUE):
            raise CountUndefined(f"no model count when the verdict is {verdict.value}")
        module = CohomologyService.induced_module(d, a)
        result = CohomologyService.count_from_action(a.group, module)
        if oracle:
            brute = CohomologyService.h1_bruteforce(module, a.group)
            if brute != result.count:
                raise InvariantBreach(f"product formula gives {result.count}, cocycle enumeration gives {brute}")
            result = result.model_copy(update={"oracle_count": brute})
        logger.debug(f"{result.count} model(s) over {len(result.orbits)} orbit(s)")
        return result

    @staticmethod
    def extend_permutations(group: FiniteGroup, given: Dict[int, Permutation]) -> Dict[int, Permutation]:
        """
        Extend a permutation representation from a generating set to the whole group.
        Raises InvalidGroup when ``given`` does not generate or is not a homomorphism.
        """
        if not given:
            raise InvalidGroup("no permutations given")
        compose = AutomorphismService.compose
        domain = next(iter(given.values()))
        full: Dict[int, Permutation] = {group.identity: {x: x for x in domain}}
        frontier = [group.identity]
        while frontier:
            x = frontier.pop()
            for generator, permutation in given.items():
                y = group.multiply(x, generator)
                if y not in full:
                    full[y] = compose(permutation, full[x])
                    frontier.append(y)
        if len(full) != group.order:
            raise InvalidGroup(f"permutations on {sorted(given)} do not generate the group")
        for x in group.elements:
            for y in group.elements:
                if full[group.multiply(x, y)] != compose(full[y], full[x]):
                    raise InvalidGroup(f"permutations do not define a homomorphism at ({x}, {y})")
        for x, permutation in given.items():
            if full[x] != permutation:
                raise InvalidGroup(f"permutation given for {x} disagrees with the generated one")
        return full

    @staticmethod
    def check_fibers(problem: CoverProblem, s: Dict[int, Permutation]) -> None:
        """Fiber sizes must be constant along each s-orbit"""
        for point in problem.omega:
            size = len(problem.fiber(point))
            for g, permutation in s.items():
                other = permutation[point]
                if len(problem.fiber(other)) != size:
                    raise FiberMismatch(
                        f"|zeta^-1({point})| = {size} but |zeta^-1({other})| = {len(problem.fiber(other))} on the same orbit"
                    )

    @staticmethod
    def canonical_lift(problem: CoverProblem, s: Optional[Dict[int, Permutation]] = None) -> Dict[int, Permutation]:
        """m'_gamma(d_w^i) = d_{s_gamma(w)}^i with each fiber labelled in name order"""
        s = s or CohomologyService.extend_permutations(problem.group, problem.s)
        CohomologyService.check_fibers(problem, s)
        labeling = {point: problem.fiber(point) for point in problem.omega}
        lifts = {}
        for g, permutation in s.items():
            lift = {}
            for point, names in labeling.items():
                for i, name in enumerate(names):
                    lift[name] = labeling[permutation[point]][i]
            lifts[g] = lift
        return lifts

    @staticmethod
    def lift_cover(problem: CoverProblem) -> CoverLift:
        """
        Compare given covers m_gamma with the canonical lift m'_gamma.
        The steps are:
        1. extend s from the generators and check fiber sizes along its orbits
        2. check the covers generate Gamma and lie over s
        3. return the lifts with the corrections a_gamma = m'_gamma o m_gamma^-1,
           each of which preserves the fibers of zeta
        """
        s = CohomologyService.extend_permutations(problem.group, problem.s)
        CohomologyService.check_fibers(problem, s)
        if problem.group.closure(problem.covers) != frozenset(problem.group.elements):
            raise MissingCover(f"covers are given for {sorted(problem.covers)}, which do not generate the group")
        for g, cover in problem.covers.items():
            for name, image in cover.items():
                if problem.zeta[image] != s[g][problem.zeta[name]]:
                    raise InconsistentCover(
                        f"m[{g}] sends {name} to {image}, which does not lie over s[{g}]({problem.zeta[name]})"
                    )

        lifts = CohomologyService.canonical_lift(problem, s)
        corrections = {}
        for g, cover in problem.covers.items():
            inverse = {image: name for name, image in cover.items()}
            correction = AutomorphismService.compose(inverse, lifts[g])
            if any(problem.zeta[correction[name]] != problem.zeta[name] for name in correction):
                raise InvariantBreach(f"correction a[{g}] does not preserve the fibers of zeta")
            corrections[g] = correction
        logger.debug(f"lifted covers for {len(problem.covers)} element(s)")
        return CoverLift(
            lifts=lifts,
            corrections=corrections,
            labeling={point: problem.fiber(point) for point in problem.omega},
        )
