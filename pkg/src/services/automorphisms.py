"""Sigma^N, the group Aut^G(Y) and its action on colors.

Aut^G(Y) is identified with the characters psi: X -> Q/Z vanishing on
Sigma^N. Such a psi swaps the two colors of alpha in A exactly when
psi(alpha) = 1/2 and fixes every other color.
"""
import logging
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from src.core.errors import InvariantBreach, NotAnAutomorphismCharacter, NotInWeightLattice, OddValueOnA
from src.models.automorphism import AutProfile, TorsionCharacter
from src.models.datum import HomogeneousSphericalDatum
from src.models.lattice import AbelianInvariants, IntVector, Sublattice
from src.services.lattice import LatticeService
from src.services.spherical_data import SphericalDataService

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class AutomorphismService:
    """G-equivariant automorphisms of G/H through their characters on the weight lattice"""

    @staticmethod
    def sigma_N(d: HomogeneousSphericalDatum) -> List[IntVector]:
        """
        c_gamma * gamma for gamma in Sigma, in weight-lattice coordinates.
        c_gamma = 2 when gamma is a simple root whose two colors share rho and 1
        otherwise, unless ``sigma_n_override`` is given. Override entries are
        integers by the datum model, so only their length can put them outside X.
        """
        if d.sigma_n_override is not None:
            for vector in d.sigma_n_override:
                if len(vector) != d.rank:
                    raise NotInWeightLattice(f"override vector {vector} is not in the weight lattice of rank {d.rank}")
            return [tuple(v) for v in d.sigma_n_override]

        doubled = {
            tuple(SphericalDataService.spherical_root_of(d, label)) for label in SphericalDataService.set_A(d).roots
        }
        return [tuple(2 * x for x in sigma) if tuple(sigma) in doubled else tuple(sigma) for sigma in d.spherical_roots]

    @staticmethod
    def lattice_lambda(d: HomogeneousSphericalDatum) -> Sublattice:
        return Sublattice(ambient_rank=d.rank, generators=AutomorphismService.sigma_N(d))

    @staticmethod
    def lattice_lambda_bar(d: HomogeneousSphericalDatum) -> Sublattice:
        """<Sigma^N ∪ A>, with A embedded in the weight lattice through Sigma ∩ S"""
        extra = [SphericalDataService.spherical_root_of(d, label) for label in SphericalDataService.set_A(d).roots]
        return Sublattice(ambient_rank=d.rank, generators=list(AutomorphismService.sigma_N(d)) + extra)

    @staticmethod
    def aut_group(d: HomogeneousSphericalDatum) -> AbelianInvariants:
        """Invariants of X / Lambda, the character group of Aut^G(Y)"""
        return LatticeService.quotient_invariants(d.rank, AutomorphismService.lattice_lambda(d))

    @staticmethod
    def closure_profile(d: HomogeneousSphericalDatum) -> Tuple[bool, bool]:
        """
        (self_normalizing, spherically_closed).
        The kernel of Aut^G(Y) -> Aut(D) consists of the characters vanishing on
        Sigma^N and on A, so the action on colors is faithful iff
        <Sigma^N ∪ A> is the whole weight lattice.
        """
        return AutomorphismService.lattice_lambda(d).is_full(), AutomorphismService.lattice_lambda_bar(d).is_full()

    @staticmethod
    def aut_profile(d: HomogeneousSphericalDatum) -> AutProfile:
        """
        Everything the analysis reports about Aut^G(Y):
        1. Sigma^N with the lattices Lambda and <Sigma^N ∪ A>
        2. the invariants of X / Lambda
        3. the self-normalizing and spherically closed flags
        A datum with Lambda = X but A non-empty is contradictory and raises InvariantBreach.
        """
        self_normalizing, spherically_closed = AutomorphismService.closure_profile(d)
        a = SphericalDataService.set_A(d)
        if self_normalizing and a.roots:
            raise InvariantBreach(
                f"Lambda is the whole weight lattice but A = {list(a.roots)} is not empty; the datum is inconsistent"
            )
        return AutProfile(
            sigma_N=tuple(AutomorphismService.sigma_N(d)),
            lattice_lambda=AutomorphismService.lattice_lambda(d),
            lattice_lambda_bar=AutomorphismService.lattice_lambda_bar(d),
            character_group=AutomorphismService.aut_group(d),
            self_normalizing=self_normalizing,
            spherically_closed=spherically_closed,
        )

    @staticmethod
    def check_automorphism_character(d: HomogeneousSphericalDatum, psi: TorsionCharacter) -> None:
        if len(psi.values) != d.rank:
            raise NotAnAutomorphismCharacter(f"character has {len(psi.values)} values, weight lattice has rank {d.rank}")
        for vector in AutomorphismService.sigma_N(d):
            if psi(vector) != 0:
                raise NotAnAutomorphismCharacter(f"psi({vector}) = {psi(vector)} is not 0 on Sigma^N")

    @staticmethod
    def color_action(d: HomogeneousSphericalDatum, psi: TorsionCharacter) -> Dict[str, str]:
        """
        Permutation of colors induced by the automorphism with character ``psi``.
        Only the values of psi on A matter: 1/2 swaps the pair, 0 fixes it.
        """
        AutomorphismService.check_automorphism_character(d, psi)
        permutation = {c.name: c.name for c in d.colors}
        a = SphericalDataService.set_A(d)
        for label in a.roots:
            value = psi(SphericalDataService.spherical_root_of(d, label))
            if value not in (0, HALF):
                raise OddValueOnA(f"psi({label}) = {value}, expected 0 or 1/2")
            if value == HALF:
                plus, minus = a.pairs[label]
                permutation[plus], permutation[minus] = minus, plus
        return permutation

    @staticmethod
    def surjectivity_witness(d: HomogeneousSphericalDatum, label: str) -> TorsionCharacter:
        """psi_alpha with psi(alpha) = 1/2 and psi = 0 on the other spherical roots"""
        index = SphericalDataService.simple_spherical_roots(d)[label]
        targets = [HALF if i == index else Fraction(0) for i in range(len(d.spherical_roots))]
        solution = LatticeService.solve_rational(d.spherical_roots, targets, d.rank)
        if solution is None:
            raise InvariantBreach(f"cannot extend the character of {label} from Sigma to the weight lattice")
        psi = TorsionCharacter(values=solution)
        AutomorphismService.check_automorphism_character(d, psi)
        return psi

    @staticmethod
    def automorphism_characters(d: HomogeneousSphericalDatum) -> List[TorsionCharacter]:
        """All characters of the finite part of X / Lambda"""
        generators = LatticeService.dual_torsion_generators(AutomorphismService.lattice_lambda(d))
        found = []
        for multiples in product(*(range(order) for order, _ in generators)):
            values = [Fraction(0)] * d.rank
            for k, (_, gen) in zip(multiples, generators):
                values = [v + k * g for v, g in zip(values, gen)]
            found.append(TorsionCharacter(values=tuple(values)))
        logger.debug(f"{len(found)} automorphism character(s) for {d.name or '<datum>'}")
        return found

    @staticmethod
    def compose(first: Dict[str, str], then: Dict[str, str]) -> Dict[str, str]:
        """then ∘ first"""
        return {x: then[first[x]] for x in first}

    @staticmethod
    def permutation_order(permutation: Dict[str, str]) -> int:
        order, current = 1, dict(permutation)
        while any(k != v for k, v in current.items()):
            current = AutomorphismService.compose(current, permutation)
            order += 1
        return order
