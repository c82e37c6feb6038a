"""Validation of homogeneous spherical data and the derived invariants"""
import logging
from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence

from src.core.errors import AxiomViolation, InvariantBreach
from src.models.datum import (
    AxiomTag,
    Color,
    Halfspace,
    HomogeneousSphericalDatum,
    OmegaDecomposition,
    OmegaPoint,
    SetA,
    ValidationReport,
    Violation,
)
from src.models.lattice import IntegerMatrix, IntVector
from src.services.lattice import LatticeService

logger = logging.getLogger(__name__)


class SphericalDataService:
    """Axiom checks on a homogeneous spherical datum and the invariants read off it"""

    @staticmethod
    def pairing(rho: Sequence[Fraction], coords: Sequence[int]) -> Fraction:
        """<rho, chi> for chi given in weight-lattice coordinates"""
        return sum((Fraction(r) * c for r, c in zip(rho, coords)), Fraction(0))

    @staticmethod
    def weight_coordinates(d: HomogeneousSphericalDatum, vector: IntVector) -> Optional[IntVector]:
        """Coordinates of a character of T in the weight basis, or None if it is not in the weight lattice"""
        return LatticeService.solve_integral(d.weight_basis, vector)

    @staticmethod
    def spherical_roots_ambient(d: HomogeneousSphericalDatum) -> List[IntVector]:
        return [d.to_ambient(sigma) for sigma in d.spherical_roots]

    @staticmethod
    def simple_spherical_roots(d: HomogeneousSphericalDatum) -> Dict[str, int]:
        """Sigma ∩ S as a map simple-root label -> index into ``spherical_roots``"""
        ambient = SphericalDataService.spherical_roots_ambient(d)
        found = {}
        for root in d.simple_roots:
            for index, vector in enumerate(ambient):
                if vector == root.vector:
                    found[root.label] = index
                    break
        return found

    @staticmethod
    def colors_moved_by(d: HomogeneousSphericalDatum, label: str) -> List[Color]:
        """D(alpha), sorted by color name so that D+ comes first"""
        return sorted((c for c in d.colors if label in c.moved_by), key=lambda c: c.name)

    @staticmethod
    def _structural_violations(d: HomogeneousSphericalDatum) -> List[Violation]:
        found = []

        def flag(tag: AxiomTag, subject: str, message: str) -> None:
            found.append(Violation(tag=tag, subject=subject, message=message))

        n, r = d.ambient_rank, d.rank
        for i, w in enumerate(d.weight_basis):
            if len(w) != n:
                flag(AxiomTag.DIMENSION, f"weight_basis[{i}]", f"length {len(w)}, expected {n}")
        for root in d.simple_roots:
            if len(root.vector) != n:
                flag(AxiomTag.DIMENSION, root.label, f"simple root of length {len(root.vector)}, expected {n}")
        if len(d.simple_coroots) != len(d.simple_roots):
            flag(
                AxiomTag.DIMENSION,
                "simple_coroots",
                f"{len(d.simple_coroots)} coroots for {len(d.simple_roots)} simple roots",
            )
        for i, coroot in enumerate(d.simple_coroots):
            if len(coroot) != n:
                flag(AxiomTag.DIMENSION, f"simple_coroots[{i}]", f"length {len(coroot)}, expected {n}")
        for i, sigma in enumerate(d.spherical_roots):
            if len(sigma) != r:
                flag(AxiomTag.DIMENSION, f"spherical_roots[{i}]", f"length {len(sigma)}, expected {r}")
        for color in d.colors:
            if len(color.rho) != r:
                flag(AxiomTag.DIMENSION, color.name, f"rho of length {len(color.rho)}, expected {r}")
        for i, vector in enumerate(d.sigma_n_override or ()):
            if len(vector) != r:
                flag(AxiomTag.DIMENSION, f"sigma_n_override[{i}]", f"length {len(vector)}, expected {r}")
        if found:
            return found

        if r and LatticeService.rank(IntegerMatrix.from_rows(d.weight_basis, cols=n)) != r:
            flag(AxiomTag.WEIGHT_BASIS_INDEPENDENT, "weight_basis", "weight basis vectors are linearly dependent")

        labels = d.root_labels
        for label, count in Counter(labels).items():
            if count > 1:
                flag(AxiomTag.ROOT_LABELS_DISTINCT, label, f"simple root label used {count} times")

        cartan = d.cartan_matrix()
        for i, row in enumerate(cartan):
            for j, value in enumerate(row):
                subject = f"{labels[j]},{labels[i]}"
                if i == j and value != 2:
                    flag(AxiomTag.CARTAN_MATRIX, labels[i], f"<alpha, alpha^vee> = {value}, expected 2")
                elif i != j and value > 0:
                    flag(AxiomTag.CARTAN_MATRIX, subject, f"off-diagonal Cartan integer {value} > 0")
                elif i != j and (value == 0) != (cartan[j][i] == 0):
                    flag(AxiomTag.CARTAN_MATRIX, subject, "Cartan integers are not zero-symmetric")

        for name, count in Counter(c.name for c in d.colors).items():
            if count > 1:
                flag(AxiomTag.COLOR_NAMES_DISTINCT, name, f"color name used {count} times")
        for color in d.colors:
            if not color.moved_by:
                flag(AxiomTag.MOVED_BY_NONEMPTY, color.name, "color is not moved by any simple root")
            for label in sorted(color.moved_by - set(labels)):
                flag(AxiomTag.UNKNOWN_SIMPLE_ROOT, color.name, f"moved by unknown simple root {label!r}")
        return found

    @staticmethod
    def _color_axiom_violations(d: HomogeneousSphericalDatum) -> List[Violation]:
        found = []
        pairing = SphericalDataService.pairing

        def flag(tag: AxiomTag, subject: str, message: str) -> None:
            found.append(Violation(tag=tag, subject=subject, message=message))

        for i, sigma in enumerate(d.spherical_roots):
            if gcd(*sigma) != 1:
                flag(AxiomTag.SPHERICAL_ROOT_PRIMITIVE, f"spherical_roots[{i}]", f"{sigma} is not primitive in the weight lattice")
        if d.spherical_roots and LatticeService.rank(
            IntegerMatrix.from_rows(d.spherical_roots, cols=d.rank)
        ) != len(d.spherical_roots):
            flag(AxiomTag.SPHERICAL_ROOTS_INDEPENDENT, "spherical_roots", "spherical roots are linearly dependent")

        in_sigma = SphericalDataService.simple_spherical_roots(d)
        for label in d.root_labels:
            moved = SphericalDataService.colors_moved_by(d, label)
            if len(moved) > 2:
                flag(AxiomTag.COLORS_PER_ROOT, label, f"{len(moved)} colors moved by {label}, at most 2 allowed")
            if (len(moved) == 2) != (label in in_sigma):
                if label in in_sigma:
                    message = f"{label} is a spherical root but moves {len(moved)} colors"
                else:
                    message = f"{label} moves two colors but is not a spherical root"
                flag(AxiomTag.PAIR_IFF_SPHERICAL_SIMPLE_ROOT, label, message)
            if len(moved) != 2:
                continue

            plus, minus = moved
            total = tuple(a + b for a, b in zip(plus.rho, minus.rho))
            expected = d.coroot_on_weights(label)
            if total != expected:
                flag(
                    AxiomTag.PAIR_RHO_SUM,
                    label,
                    f"rho({plus.name}) + rho({minus.name}) = {[str(x) for x in total]}, "
                    f"expected {label}^vee = {[str(x) for x in expected]}",
                )
            for color in moved:
                for beta in sorted(color.moved_by):
                    if beta not in d.root_labels:
                        continue
                    coords = SphericalDataService.weight_coordinates(d, d.root(beta).vector)
                    if coords is None:
                        flag(AxiomTag.PAIR_RHO_ON_MOVED_ROOT, color.name, f"{beta} moves {color.name} but is not in the weight lattice")
                    elif pairing(color.rho, coords) != 1:
                        flag(
                            AxiomTag.PAIR_RHO_ON_MOVED_ROOT,
                            color.name,
                            f"<rho({color.name}), {beta}> = {pairing(color.rho, coords)}, expected 1",
                        )
            if plus.rho == minus.rho:
                for color in moved:
                    if color.moved_by != {label}:
                        flag(
                            AxiomTag.SHARED_PAIR_MOVED_BY,
                            color.name,
                            f"colors of {label} share rho, so {color.name} must be moved by {label} only",
                        )
        return found

    @staticmethod
    def validate(d: HomogeneousSphericalDatum) -> ValidationReport:
        """
        Check the datum against the structural rules and the color axioms.
        Structural problems (lengths, Cartan matrix, labels) are reported on their
        own, since the color axioms cannot be evaluated on a malformed datum.
        Violations are returned sorted, never raised.
        """
        found = SphericalDataService._structural_violations(d)
        if not found:
            found = SphericalDataService._color_axiom_violations(d)
        found = sorted(set(found), key=lambda v: (v.tag.value, v.subject, v.message))
        logger.debug(f"validate {d.name or '<datum>'}: {len(found)} violation(s)")
        return ValidationReport(violations=tuple(found))

    @staticmethod
    def omega_decomposition(d: HomogeneousSphericalDatum) -> OmegaDecomposition:
        """
        The map zeta from colors to Omega = image of rho x varsigma,
        split by fiber size into Omega(1) and Omega(2)
        """
        zeta = {c.name: OmegaPoint(rho_value=c.rho, moved_by=c.moved_by) for c in d.colors}
        sizes = Counter(zeta.values())
        for point, size in sizes.items():
            if size > 2:
                raise AxiomViolation(f"{size} colors over {point.key}; fibers of rho x varsigma have at most 2 elements")
        return OmegaDecomposition(
            zeta=zeta,
            omega1=frozenset(p for p, size in sizes.items() if size == 1),
            omega2=frozenset(p for p, size in sizes.items() if size == 2),
        )

    @staticmethod
    def valuation_cone(d: HomogeneousSphericalDatum) -> List[Halfspace]:
        return [Halfspace(normal=sigma) for sigma in d.spherical_roots]

    @staticmethod
    def set_A(d: HomogeneousSphericalDatum) -> SetA:
        """
        Simple roots whose two colors share rho, with the bijection onto Omega(2).
        Raises InvariantBreach when the roots and Omega(2) fail to match up.
        """
        in_sigma = SphericalDataService.simple_spherical_roots(d)
        roots, bijection, pairs = [], {}, {}
        for label in d.root_labels:
            moved = SphericalDataService.colors_moved_by(d, label)
            if label not in in_sigma or len(moved) != 2 or moved[0].rho != moved[1].rho:
                continue
            plus, minus = moved
            roots.append(label)
            bijection[label] = OmegaPoint(rho_value=plus.rho, moved_by=plus.moved_by)
            pairs[label] = (plus.name, minus.name)

        omega2 = SphericalDataService.omega_decomposition(d).omega2
        if len(set(bijection.values())) != len(roots) or set(bijection.values()) != omega2:
            raise InvariantBreach(f"set A {roots} is not in bijection with Omega^(2) ({len(omega2)} points)")
        return SetA(roots=tuple(roots), bijection=bijection, pairs=pairs)

    @staticmethod
    def spherical_root_of(d: HomogeneousSphericalDatum, label: str) -> IntVector:
        """Weight-lattice coordinates of a simple root lying in Sigma"""
        return d.spherical_roots[SphericalDataService.simple_spherical_roots(d)[label]]
