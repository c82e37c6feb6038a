"""The *-action on a spherical datum and the existence verdict"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.errors import InvariantBreach, NotDiagramAction
from src.models.datum import HomogeneousSphericalDatum, OmegaPoint
from src.models.galois import (
    ElementPreservation,
    ExistenceVerdict,
    GaloisAction,
    InnerFormProfile,
    OmegaOrbit,
    PreservationReport,
    Rule,
    Verdict,
)
from src.models.lattice import IntegerMatrix, Sublattice
from src.services.automorphisms import AutomorphismService
from src.services.lattice import LatticeService
from src.services.spherical_data import SphericalDataService

logger = logging.getLogger(__name__)

# criterion behind each verdict, reported next to it
RULES = {
    Verdict.NO_EQUIVARIANT_MODEL: Rule.NECESSARY_CONDITION,
    Verdict.EXISTS_UNIQUE: Rule.SELF_NORMALIZING,
    Verdict.EXISTS: Rule.SPHERICALLY_CLOSED,
    Verdict.INCONCLUSIVE: Rule.OPEN_CASE,
}

CITATIONS = {
    Rule.NECESSARY_CONDITION: "an equivariant model forces every eps_gamma to preserve X, Sigma, Omega(1), Omega(2)",
    Rule.SELF_NORMALIZING: "Lambda = X and preserved invariants give a model, unique up to unique isomorphism",
    Rule.SPHERICALLY_CLOSED: "spherically closed with preserved invariants gives an equivariant model",
    Rule.OPEN_CASE: "no criterion applies: invariants preserved but the datum is not spherically closed",
}


class GaloisService:
    """
    The *-action eps of a finite quotient Gamma on the datum and what it decides
    Results are relative to the quotient supplied, not the full Galois group
    """

    @staticmethod
    def root_permutation(d: HomogeneousSphericalDatum, a: GaloisAction, element: int) -> Dict[str, str]:
        """
        Simple-root permutation induced by eps_gamma.
        eps_gamma must send simple roots to simple roots, carry each coroot
        along and keep the Cartan matrix; otherwise NotDiagramAction is raised.
        """
        eps = a.eps[element]
        if eps.rows != d.ambient_rank:
            raise NotDiagramAction(f"eps[{element}] is {eps.rows}x{eps.cols}, X*(T) has rank {d.ambient_rank}")
        by_vector = {root.vector: root.label for root in d.simple_roots}
        permutation = {}
        for root in d.simple_roots:
            image = eps.apply(root.vector)
            if image not in by_vector:
                raise NotDiagramAction(f"eps[{element}] sends {root.label} = {root.vector} to {image}, not a simple root")
            permutation[root.label] = by_vector[image]
        if len(set(permutation.values())) != len(permutation):
            raise NotDiagramAction(f"eps[{element}] does not permute the simple roots")

        transpose = eps.transpose()
        for label, image in permutation.items():
            # <eps chi, eps(alpha)^vee> = <chi, alpha^vee>
            if transpose.apply(d.coroot(image)) != d.coroot(label):
                raise NotDiagramAction(f"eps[{element}] maps {label} to {image} but does not carry the coroot along")
        if not GaloisService._keeps_cartan(d, permutation):
            raise NotDiagramAction(f"eps[{element}] permutes the simple roots but changes the Cartan matrix")
        return permutation

    @staticmethod
    def _keeps_cartan(d: HomogeneousSphericalDatum, permutation: Dict[str, str]) -> bool:
        labels = d.root_labels
        index = {label: i for i, label in enumerate(labels)}
        cartan = d.cartan_matrix()
        return all(
            cartan[index[permutation[x]]][index[permutation[y]]] == cartan[i][j]
            for i, x in enumerate(labels)
            for j, y in enumerate(labels)
        )

    @staticmethod
    def diagram_automorphisms(d: HomogeneousSphericalDatum) -> List[Dict[str, str]]:
        """
        Every permutation of the simple roots that keeps the Cartan matrix.
        The search extends partial maps one root at a time and prunes as soon
        as an entry between assigned roots disagrees; the identity comes first.
        """
        labels = d.root_labels
        cartan = d.cartan_matrix()
        n = len(labels)
        found = []

        def extend(images: List[int]) -> None:
            i = len(images)
            if i == n:
                found.append({labels[k]: labels[images[k]] for k in range(n)})
                return
            for candidate in range(n):
                if candidate in images or cartan[candidate][candidate] != cartan[i][i]:
                    continue
                if all(
                    cartan[candidate][images[k]] == cartan[i][k] and cartan[images[k]][candidate] == cartan[k][i]
                    for k in range(i)
                ):
                    extend(images + [candidate])

        extend([])
        return found

    @staticmethod
    def inner_form_profile(d: HomogeneousSphericalDatum, a: GaloisAction) -> InnerFormProfile:
        """
        Checks whether the preservation condition holds without looking at Omega:
        1. an inner form (eps trivial on the quotient) preserves everything
        2. a semisimple group whose Dynkin diagram has only the identity
           automorphism admits no other diagram action, so it is an inner form
        A split group is an inner form, so case 1 covers it.
        """
        inner = a.is_trivial
        semisimple = d.ambient_rank == len(d.simple_roots)
        automorphisms = len(GaloisService.diagram_automorphisms(d))
        rigid = semisimple and automorphisms == 1
        if inner:
            reason = "eps is trivial on the quotient (inner form)"
        elif rigid:
            reason = "semisimple with a Dynkin diagram without nontrivial automorphisms"
        elif not semisimple:
            reason = "eps is not trivial and X*(T) is larger than the root lattice span, so preservation must be checked"
        else:
            reason = f"the Dynkin diagram has {automorphisms} automorphisms, so preservation must be checked"
        return InnerFormProfile(
            inner_form=inner,
            semisimple=semisimple,
            diagram_automorphisms=automorphisms,
            preservation_automatic=inner or rigid,
            reason=reason,
        )

    @staticmethod
    def weight_action(d: HomogeneousSphericalDatum, a: GaloisAction, element: int) -> Optional[IntegerMatrix]:
        """Matrix of eps_gamma on weight-lattice coordinates, or None if eps_gamma(X) != X"""
        eps = a.eps[element]
        images = [eps.apply(w) for w in d.weight_basis]
        if Sublattice(ambient_rank=d.ambient_rank, generators=images) != Sublattice(
            ambient_rank=d.ambient_rank, generators=d.weight_basis
        ):
            return None
        columns = [LatticeService.solve_integral(d.weight_basis, image) for image in images]
        if any(c is None for c in columns):
            raise InvariantBreach(f"eps[{element}] preserves X but an image has no coordinates")
        return IntegerMatrix.from_rows([[c[i] for c in columns] for i in range(d.rank)], cols=d.rank)

    @staticmethod
    def covector_action(vector: Sequence[Fraction], inverse_action: IntegerMatrix) -> Tuple[Fraction, ...]:
        """
        gamma . v for v in V, given A_{gamma^-1} on weight-lattice coordinates.
        (gamma . v)(chi) = v(eps_gamma^-1 chi), so v is multiplied on the right.
        """
        n = inverse_action.rows
        return tuple(
            sum((Fraction(vector[i]) * inverse_action[i, j] for i in range(n)), Fraction(0)) for j in range(n)
        )

    @staticmethod
    def _moved_point(point: OmegaPoint, inverse_action: IntegerMatrix, roots: Dict[str, str]) -> OmegaPoint:
        return OmegaPoint(
            rho_value=GaloisService.covector_action(point.rho_value, inverse_action),
            moved_by=frozenset(roots[label] for label in point.moved_by),
        )

    @staticmethod
    def omega_action(d: HomogeneousSphericalDatum, a: GaloisAction, element: int) -> Dict[OmegaPoint, OmegaPoint]:
        """Image of each point of Omega under eps_gamma (images may leave Omega when not preserved)"""
        roots = GaloisService.root_permutation(d, a, element)
        inverse = GaloisService.weight_action(d, a, a.group.inverse(element))
        if inverse is None:
            raise NotDiagramAction(f"eps[{element}] does not preserve the weight lattice")
        return {
            point: GaloisService._moved_point(point, inverse, roots)
            for point in SphericalDataService.omega_decomposition(d).omega
        }

    @staticmethod
    def _element_flags(d: HomogeneousSphericalDatum, a: GaloisAction, element: int) -> ElementPreservation:
        roots = GaloisService.root_permutation(d, a, element)
        forward = GaloisService.weight_action(d, a, element)
        if forward is None:
            return ElementPreservation(
                element=element, weight_lattice=False, spherical_roots=False, omega1=False, omega2=False
            )
        inverse = GaloisService.weight_action(d, a, a.group.inverse(element))
        sigma = {tuple(s) for s in d.spherical_roots}
        omega = SphericalDataService.omega_decomposition(d)
        moved = GaloisService._moved_point
        return ElementPreservation(
            element=element,
            weight_lattice=True,
            spherical_roots={forward.apply(s) for s in sigma} == sigma,
            omega1={moved(p, inverse, roots) for p in omega.omega1} == set(omega.omega1),
            omega2={moved(p, inverse, roots) for p in omega.omega2} == set(omega.omega2),
        )

    @staticmethod
    def preserves_invariants(
        d: HomogeneousSphericalDatum, a: GaloisAction, elements: Optional[Iterable[int]] = None
    ) -> PreservationReport:
        """
        Per-element flags for eps_gamma(X) = X, eps_gamma(Sigma) = Sigma and
        eps_gamma(Omega(i)) = Omega(i). ``elements`` defaults to the whole group;
        checking the generators gives the same answer.
        """
        chosen = list(a.group.elements) if elements is None else list(elements)
        report = PreservationReport(elements=tuple(GaloisService._element_flags(d, a, x) for x in chosen))
        logger.debug(f"preservation on {len(chosen)} element(s): failing {report.failing}")
        return report

    @staticmethod
    def s_action_orbits(d: HomogeneousSphericalDatum, a: GaloisAction) -> List[OmegaOrbit]:
        """Orbits of Gamma on Omega(2), each with the stabilizer of its least point"""
        omega2 = SphericalDataService.omega_decomposition(d).sorted_omega2()
        actions = {x: GaloisService.omega_action(d, a, x) for x in a.group.elements}
        seen, orbits = set(), []
        for base in omega2:
            if base in seen:
                continue
            points = {actions[x][base] for x in a.group.elements}
            if not points <= set(omega2):
                raise InvariantBreach(f"orbit of {base.key} leaves Omega(2); invariants are not preserved")
            seen |= points
            orbits.append(
                OmegaOrbit(
                    points=tuple(sorted(points, key=lambda p: p.sort_key)),
                    base_point=base,
                    stabilizer=tuple(x for x in a.group.elements if actions[x][base] == base),
                )
            )
        return orbits

    @staticmethod
    def existence_verdict(d: HomogeneousSphericalDatum, a: GaloisAction) -> ExistenceVerdict:
        """
        Decide whether Y admits a G0-equivariant model:
        1. invariants not preserved -> NoEquivariantModel
        2. preserved and Lambda = X -> ExistsUnique
        3. preserved and <Sigma^N ∪ A> = X -> Exists
        4. preserved otherwise -> Inconclusive
        The verdict carries the tag of the rule it rests on.
        """
        if not GaloisService.preserves_invariants(d, a).preserved:
            verdict, reason = Verdict.NO_EQUIVARIANT_MODEL, "the *-action does not preserve the combinatorial invariants"
        else:
            self_normalizing, spherically_closed = AutomorphismService.closure_profile(d)
            if self_normalizing:
                verdict, reason = Verdict.EXISTS_UNIQUE, "invariants preserved and Lambda = X"
            elif spherically_closed:
                verdict, reason = Verdict.EXISTS, "invariants preserved and <Sigma^N ∪ A> = X"
            else:
                verdict, reason = Verdict.INCONCLUSIVE, "invariants preserved but <Sigma^N ∪ A> is a proper sublattice of X"
        rule = RULES[verdict]
        logger.debug(f"verdict for {d.name or '<datum>'}: {verdict.value} [{rule.value}]")
        return ExistenceVerdict(
            verdict=verdict,
            rule=rule,
            citation=CITATIONS[rule],
            reason=reason,
            quotient_order=a.group.order,
        )
