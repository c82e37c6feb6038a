"""Canonical colored cones and Gamma-stability of colored fans.

Cone membership is decided exactly: the solutions of G x = b form an affine
space (sympy), and x >= 0 on it is tested by Fourier-Motzkin elimination.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import sympy as sp

from src.core.errors import (
    AmbiguousColorAction,
    DimensionMismatch,
    InconsistentCover,
    NotDiagramAction,
    NotPointed,
    UnknownColor,
)
from src.models.datum import HomogeneousSphericalDatum
from src.models.fan import (
    CanonicalCone,
    ColoredCone,
    ColoredFan,
    ConeFailure,
    EmbeddingOutcome,
    EmbeddingVerdict,
    Hypothesis,
    StabilityReport,
)
from src.models.galois import GaloisAction
from src.models.lattice import IntVector
from src.services.automorphisms import AutomorphismService
from src.services.galois import GaloisService
from src.services.lattice import LatticeService
from src.services.spherical_data import SphericalDataService

logger = logging.getLogger(__name__)

Inequality = Tuple[Tuple[Fraction, ...], Fraction]


def _to_fraction(value: sp.Expr) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _normalized(coeffs: Sequence[Fraction], bound: Fraction) -> Inequality:
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        return tuple(coeffs), bound
    return tuple(c / scale for c in coeffs), bound / scale


class FanService:
    """Canonical colored cones, Gamma-stability of colored fans and the embedding verdict"""

    @staticmethod
    def fourier_motzkin_feasible(rows: List[Inequality], width: int) -> bool:
        """Whether {t in Q^width : coeffs . t <= bound for every row} is nonempty"""
        current = {_normalized(c, b) for c, b in rows}
        for k in range(width):
            positive = [(c, b) for c, b in current if c[k] > 0]
            negative = [(c, b) for c, b in current if c[k] < 0]
            combined = {(c, b) for c, b in current if c[k] == 0}
            for cp, bp in positive:
                for cn, bn in negative:
                    p, n = cp[k], -cn[k]
                    coeffs = tuple(n * x + p * y for x, y in zip(cp, cn))
                    combined.add(_normalized(coeffs, n * bp + p * bn))
            current = combined
        return all(bound >= 0 for _, bound in current)

    @staticmethod
    def in_cone(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
        """
        Whether target is a nonnegative combination of ``generators``.
        sympy solves G x = target exactly; when the solution has free parameters,
        x >= 0 becomes a system of inequalities in them, decided by elimination.
        """
        if not generators:
            return all(x == 0 for x in target)
        g = sp.Matrix(len(target), len(generators), lambda i, j: generators[j][i])
        try:
            solution, params = g.gauss_jordan_solve(sp.Matrix(list(target)))
        except ValueError:
            return False
        free = list(params)
        base = solution.subs({p: 0 for p in free})
        if not free:
            return all(_to_fraction(x) >= 0 for x in base)
        directions = solution.jacobian(free)
        # base + directions . t >= 0  <=>  -directions . t <= base
        rows = [
            (tuple(-_to_fraction(directions[i, j]) for j in range(len(free))), _to_fraction(base[i]))
            for i in range(solution.rows)
        ]
        return FanService.fourier_motzkin_feasible(rows, len(free))

    @staticmethod
    def _integral_ray(vector: Sequence[Fraction]) -> IntVector:
        scale = lcm(1, *(Fraction(x).denominator for x in vector))
        return LatticeService.primitivize([int(Fraction(x) * scale) for x in vector])

    @staticmethod
    def canonicalize_cone(c: ColoredCone) -> CanonicalCone:
        """Primitive extreme rays of a pointed cone, sorted; raises NotPointed if the cone contains a line"""
        rays = sorted({FanService._integral_ray(g) for g in c.generators})
        if rays:
            # a line exists iff some x >= 0 with sum 1 has G x = 0
            with_total = [tuple(r) + (1,) for r in rays]
            if FanService.in_cone(with_total, (0,) * len(rays[0]) + (1,)):
                raise NotPointed(f"cone spanned by {rays} contains a line")
        extreme = [r for i, r in enumerate(rays) if not FanService.in_cone(rays[:i] + rays[i + 1:], r)]
        return CanonicalCone(rays=tuple(extreme), colors=c.colors)

    @staticmethod
    def canonicalize_fan(f: ColoredFan) -> Tuple[CanonicalCone, ...]:
        """Canonical cones of the fan, duplicates removed, in input order"""
        cones: List[CanonicalCone] = []
        for cone in f.cones:
            canonical = FanService.canonicalize_cone(cone)
            if canonical not in cones:
                cones.append(canonical)
        return tuple(cones)

    @staticmethod
    def _check_fan(f: ColoredFan, d: HomogeneousSphericalDatum) -> None:
        names = {c.name for c in d.colors}
        for i, cone in enumerate(f.cones):
            for g in cone.generators:
                if len(g) != d.rank:
                    raise DimensionMismatch(f"cone {i} has a generator of length {len(g)}, V has dimension {d.rank}")
            unknown = sorted(cone.colors - names)
            if unknown:
                raise UnknownColor(f"cone {i} uses unknown colors {unknown}")

    @staticmethod
    def color_image(
        d: HomogeneousSphericalDatum,
        a: GaloisAction,
        element: int,
        colors: FrozenSet[str],
        explicit: Optional[Dict[str, str]] = None,
    ) -> FrozenSet[str]:
        """
        gamma(F) for a set F of colors.
        With an explicit color permutation it is checked to lie over the action on
        Omega and then applied. Without one, a two-color fiber must meet F in
        nothing or in everything, else AmbiguousColorAction is raised.
        """
        decomposition = SphericalDataService.omega_decomposition(d)
        if explicit is not None:
            moves = GaloisService.omega_action(d, a, element)
            if set(explicit) != set(decomposition.zeta) or set(explicit.values()) != set(decomposition.zeta):
                raise InconsistentCover(f"color permutation for {element} is not a permutation of the colors")
            for name, image in explicit.items():
                if decomposition.zeta[image] != moves[decomposition.zeta[name]]:
                    raise InconsistentCover(f"color permutation for {element} sends {name} to {image}, off its fiber")
            return frozenset(explicit[c] for c in colors)
        if a.eps[element].is_identity():
            return colors

        moves = GaloisService.omega_action(d, a, element)
        image = set()
        for point in {decomposition.zeta[c] for c in colors}:
            fiber = set(decomposition.fiber(point))
            if not fiber <= colors:
                raise AmbiguousColorAction(
                    f"F meets the fiber {sorted(fiber)} in {sorted(fiber & colors)}; give a color permutation for {element}"
                )
            image |= set(decomposition.fiber(moves[point]))
        return frozenset(image)

    @staticmethod
    def is_gamma_stable(
        f: ColoredFan,
        d: HomogeneousSphericalDatum,
        a: GaloisAction,
        elements: Optional[Sequence[int]] = None,
        color_permutations: Optional[Dict[int, Dict[str, str]]] = None,
    ) -> StabilityReport:
        """
        gamma(C) = C and gamma(F) = F for every cone and every checked element.
        Cones are compared after canonicalization, so the generators a fan lists
        do not matter. The report also says whether the images are at least
        cones of the fan.
        """
        FanService._check_fan(f, d)
        cones = FanService.canonicalize_fan(f)
        chosen = tuple(a.group.elements) if elements is None else tuple(elements)
        color_permutations = color_permutations or f.color_permutations
        failures, images = [], set()
        for x in chosen:
            inverse = GaloisService.weight_action(d, a, a.group.inverse(x))
            if inverse is None:
                raise NotDiagramAction(f"eps[{x}] does not preserve the weight lattice")
            for i, cone in enumerate(cones):
                rays = [GaloisService.covector_action(r, inverse) for r in cone.rays]
                image = FanService.canonicalize_cone(
                    ColoredCone(
                        generators=rays,
                        colors=FanService.color_image(d, a, x, cone.colors, color_permutations.get(x)),
                    )
                )
                images.add(image)
                if image.rays != cone.rays or image.colors != cone.colors:
                    failures.append(
                        ConeFailure(
                            cone=i,
                            element=x,
                            cone_moved=image.rays != cone.rays,
                            colors_moved=image.colors != cone.colors,
                            image=image,
                        )
                    )
        logger.debug(f"fan stability: {len(failures)} failure(s) over {len(chosen)} element(s)")
        return StabilityReport(
            stable=not failures,
            fan_permuted=images <= set(cones),
            cones=cones,
            failures=tuple(failures),
            checked_elements=chosen,
        )

    @staticmethod
    def embedding_verdict(
        f: ColoredFan,
        d: HomogeneousSphericalDatum,
        a: GaloisAction,
        color_permutations: Optional[Dict[int, Dict[str, str]]] = None,
    ) -> EmbeddingVerdict:
        """
        ExistsUnique when all three hypotheses hold:
        1. inner form: eps is trivial on the quotient
        2. self-normalizing: Lambda = X
        3. the colored fan is Gamma-stable
        Otherwise HypothesesNotMet with the failed ones listed. No claim is
        made beyond these hypotheses.
        """
        FanService._check_fan(f, d)
        failed, notes = [], []
        if not a.is_trivial:
            failed.append(Hypothesis.INNER_FORM)
        self_normalizing, _ = AutomorphismService.closure_profile(d)
        if not self_normalizing:
            failed.append(Hypothesis.SELF_NORMALIZING)
        if not GaloisService.preserves_invariants(d, a).preserved:
            failed.append(Hypothesis.GAMMA_STABLE)
            notes.append("the *-action does not preserve the invariants, so no colored fan is Gamma-stable")
        else:
            try:
                if not FanService.is_gamma_stable(f, d, a, color_permutations=color_permutations).stable:
                    failed.append(Hypothesis.GAMMA_STABLE)
            except AmbiguousColorAction as exc:
                failed.append(Hypothesis.GAMMA_STABLE)
                notes.append(f"stability undetermined: {exc.detail}")
        outcome = EmbeddingOutcome.HYPOTHESES_NOT_MET if failed else EmbeddingOutcome.EXISTS_UNIQUE
        return EmbeddingVerdict(verdict=outcome, failed=tuple(failed), notes=tuple(notes))
