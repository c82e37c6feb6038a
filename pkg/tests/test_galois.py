import random

import pytest

from src.core.errors import InvalidGroup, NotDiagramAction, NotLatticeAutomorphism
from src.models.datum import HomogeneousSphericalDatum, OmegaPoint
from src.models.galois import FiniteGroup, GaloisAction, Rule, Verdict
from src.services.galois import GaloisService
from tests.helpers import asymmetric_datum, power_action, small_groups, torus_factor_datum

SWAP = [[0, 1], [1, 0]]


def test_group_constructors():
    assert FiniteGroup.cyclic(5).order == 5
    assert FiniteGroup.dihedral(4).order == 8
    assert FiniteGroup.symmetric3().order == 6
    q8 = FiniteGroup.quaternion()
    assert sorted(q8.order_of(x) for x in q8.elements) == [1, 2, 4, 4, 4, 4, 4, 4]
    d4 = FiniteGroup.dihedral(4)
    assert sorted(d4.order_of(x) for x in d4.elements) == [1, 2, 2, 2, 2, 2, 4, 4]
    s3 = FiniteGroup.symmetric3()
    assert any(s3.multiply(x, y) != s3.multiply(y, x) for x in s3.elements for y in s3.elements)
    product = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4))
    assert product.order == 8 and max(product.order_of(x) for x in product.elements) == 4


def test_invalid_tables_are_rejected():
    with pytest.raises(InvalidGroup):
        FiniteGroup(order=2, cayley=[[0, 1], [1, 1]])
    with pytest.raises(InvalidGroup):
        FiniteGroup(order=2, cayley=[[1, 0], [0, 1]], identity=0)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(InvalidGroup):
        FiniteGroup(order=5, cayley=loop)
    with pytest.raises(InvalidGroup):
        FiniteGroup(order=4, cayley=FiniteGroup.cyclic(4).cayley, generators=(2,))


def test_subgroups_cosets_and_relabelling():
    rng = random.Random(3)
    for group in small_groups():
        x = rng.choice(list(group.elements))
        sub = group.subgroup([x])
        assert sub.order == group.order_of(x)
        action = group.coset_action([x])
        for g in group.elements:
            for h in group.elements:
                gh = action[group.multiply(g, h)]
                assert gh == tuple(action[g][i] for i in action[h])
        permutation = list(group.elements)
        rng.shuffle(permutation)
        relabelled = group.relabel(permutation)
        assert sorted(relabelled.order_of(y) for y in relabelled.elements) == sorted(
            group.order_of(y) for y in group.elements
        )
        assert group.inverse(x) == next(y for y in group.elements if group.multiply(x, y) == group.identity)


def test_action_must_be_a_homomorphism():
    z3 = FiniteGroup.cyclic(3)
    with pytest.raises(InvalidGroup):
        GaloisAction(group=z3, eps={0: [[1, 0], [0, 1]], 1: SWAP, 2: SWAP})
    with pytest.raises(NotLatticeAutomorphism):
        GaloisAction(group=FiniteGroup.cyclic(2), eps={0: [[1]], 1: [[2]]})
    with pytest.raises(InvalidGroup):
        GaloisAction(group=FiniteGroup.cyclic(2), eps={0: [[1]]})


def test_trivial_action_preserves_everything(catalog_data):
    for d in catalog_data:
        report = GaloisService.preserves_invariants(d, GaloisAction.trivial(FiniteGroup.cyclic(2), d.ambient_rank))
        assert report.preserved
        assert all(e.weight_lattice and e.spherical_roots and e.omega1 and e.omega2 for e in report.elements)


def test_swap_preserves_product(product_datum, swap_z2):
    assert GaloisService.preserves_invariants(product_datum, swap_z2).preserved
    image = GaloisService.omega_action(product_datum, swap_z2, 1)
    first = OmegaPoint(rho_value=("1", "0"), moved_by=frozenset({"alpha1"}))
    assert image[first] == OmegaPoint(rho_value=("0", "1"), moved_by=frozenset({"alpha2"}))


def test_minus_one_is_not_a_diagram_action(pgl2_torus):
    a = GaloisAction(group=FiniteGroup.cyclic(2), eps={0: [[1]], 1: [[-1]]})
    with pytest.raises(NotDiagramAction):
        GaloisService.preserves_invariants(pgl2_torus, a)


def test_swap_does_not_preserve_asymmetric_datum():
    report = GaloisService.preserves_invariants(asymmetric_datum(), power_action(FiniteGroup.cyclic(2), SWAP, 2))
    assert not report.preserved
    assert report.failing == [1]
    assert not report.elements[1].weight_lattice


def test_generator_check_matches_full_enumeration(product_datum):
    cases = [
        (product_datum, power_action(FiniteGroup.cyclic(2), SWAP, 2)),
        (product_datum, power_action(FiniteGroup.cyclic(4), SWAP, 2)),
        (product_datum, power_action(FiniteGroup.cyclic(6), SWAP, 2)),
        (product_datum, GaloisAction.trivial(FiniteGroup.quaternion(), 2)),
        (asymmetric_datum(), power_action(FiniteGroup.cyclic(2), SWAP, 2)),
        (asymmetric_datum(), power_action(FiniteGroup.cyclic(4), SWAP, 2)),
        (asymmetric_datum(), GaloisAction.trivial(FiniteGroup.symmetric3(), 2)),
    ]
    for d, a in cases:
        full = GaloisService.preserves_invariants(d, a)
        on_generators = GaloisService.preserves_invariants(d, a, elements=a.group.generators)
        assert full.preserved == on_generators.preserved
        flags = {e.element: e.preserved for e in full.elements}
        for x in a.group.elements:
            assert flags[x] == flags[a.group.inverse(x)]


def test_orbits(pgl2_torus, product_datum, trivial_z2_rank1, swap_z2):
    orbits = GaloisService.s_action_orbits(pgl2_torus, trivial_z2_rank1)
    assert len(orbits) == 1 and len(orbits[0].points) == 1 and orbits[0].stabilizer == (0, 1)

    orbits = GaloisService.s_action_orbits(product_datum, swap_z2)
    assert len(orbits) == 1 and len(orbits[0].points) == 2 and orbits[0].stabilizer == (0,)

    orbits = GaloisService.s_action_orbits(product_datum, GaloisAction.trivial(FiniteGroup.trivial(), 2))
    assert [len(o.points) for o in orbits] == [1, 1]
    assert all(o.stabilizer == (0,) for o in orbits)


def test_trivial_action_orbits_are_singletons_with_full_stabilizer(product_datum):
    group = FiniteGroup.dihedral(3)
    orbits = GaloisService.s_action_orbits(product_datum, GaloisAction.trivial(group, 2))
    assert len(orbits) == 2
    assert all(o.stabilizer == tuple(group.elements) for o in orbits)


def test_existence_verdicts(pgl2_torus, self_normalizing, cex_bundle, trivial_z2_rank1):
    assert GaloisService.existence_verdict(pgl2_torus, trivial_z2_rank1).verdict is Verdict.EXISTS
    assert GaloisService.existence_verdict(self_normalizing, trivial_z2_rank1).verdict is Verdict.EXISTS_UNIQUE
    inconclusive = GaloisService.existence_verdict(cex_bundle.datum, cex_bundle.galois)
    assert inconclusive.verdict is Verdict.INCONCLUSIVE
    assert inconclusive.quotient_order == 2
    refused = GaloisService.existence_verdict(asymmetric_datum(), power_action(FiniteGroup.cyclic(2), SWAP, 2))
    assert refused.verdict is Verdict.NO_EQUIVARIANT_MODEL
    assert refused.citation

    assert GaloisService.existence_verdict(pgl2_torus, trivial_z2_rank1).rule is Rule.SPHERICALLY_CLOSED
    assert GaloisService.existence_verdict(self_normalizing, trivial_z2_rank1).rule is Rule.SELF_NORMALIZING
    assert inconclusive.rule is Rule.OPEN_CASE
    assert refused.rule is Rule.NECESSARY_CONDITION
    assert len({inconclusive.citation, refused.citation}) == 2


def test_verdicts_only_degrade_when_the_image_grows(product_datum):
    rank = {Verdict.EXISTS_UNIQUE: 0, Verdict.EXISTS: 0, Verdict.INCONCLUSIVE: 0, Verdict.NO_EQUIVARIANT_MODEL: 1}
    for d in (product_datum, asymmetric_datum()):
        small = GaloisService.existence_verdict(d, GaloisAction.trivial(FiniteGroup.cyclic(2), 2)).verdict
        large = GaloisService.existence_verdict(d, power_action(FiniteGroup.cyclic(2), SWAP, 2)).verdict
        assert rank[large] >= rank[small]


def _root_system(roots, coroots) -> HomogeneousSphericalDatum:
    n = len(roots[0])
    return HomogeneousSphericalDatum.model_validate({
        "ambient_rank": n,
        "weight_basis": [[int(i == j) for j in range(n)] for i in range(n)],
        "simple_roots": [{"label": f"alpha{i + 1}", "vector": r} for i, r in enumerate(roots)],
        "simple_coroots": coroots,
        "colors": [],
    })


A2 = _root_system([[2, -1], [-1, 2]], [[1, 0], [0, 1]])
B2 = _root_system([[1, -1], [0, 1]], [[1, -1], [0, 2]])


def test_diagram_automorphisms_follow_the_cartan_matrix(product_datum, pgl2_torus):
    assert len(GaloisService.diagram_automorphisms(A2)) == 2
    assert GaloisService.diagram_automorphisms(A2)[1] == {"alpha1": "alpha2", "alpha2": "alpha1"}
    assert GaloisService.diagram_automorphisms(B2) == [{"alpha1": "alpha1", "alpha2": "alpha2"}]
    assert len(GaloisService.diagram_automorphisms(product_datum)) == 2
    assert len(GaloisService.diagram_automorphisms(pgl2_torus)) == 1


def test_swapping_roots_of_different_length_is_not_a_diagram_action():
    a = power_action(FiniteGroup.cyclic(2), [[1, 1], [0, -1]], 2)
    with pytest.raises(NotDiagramAction):
        GaloisService.root_permutation(B2, a, 1)


def test_inner_form_profile(pgl2_torus, product_datum, trivial_z2_rank1, swap_z2):
    inner = GaloisService.inner_form_profile(pgl2_torus, trivial_z2_rank1)
    assert inner.inner_form and inner.semisimple and inner.preservation_automatic
    assert inner.diagram_automorphisms == 1

    swapped = GaloisService.inner_form_profile(product_datum, swap_z2)
    assert not swapped.inner_form and not swapped.preservation_automatic
    assert swapped.diagram_automorphisms == 2

    rigid = GaloisService.inner_form_profile(B2, GaloisAction.trivial(FiniteGroup.cyclic(3), 2))
    assert rigid.inner_form and rigid.preservation_automatic

    outer = GaloisService.inner_form_profile(A2, power_action(FiniteGroup.cyclic(2), SWAP, 2))
    assert not outer.inner_form and not outer.preservation_automatic
    assert GaloisService.preserves_invariants(A2, power_action(FiniteGroup.cyclic(2), SWAP, 2)).preserved

    flip = power_action(FiniteGroup.cyclic(2), [[1, 0], [0, -1]], 2)
    torus = GaloisService.inner_form_profile(torus_factor_datum(), flip)
    assert not torus.semisimple and not torus.preservation_automatic
    assert torus.diagram_automorphisms == 1


def test_automatic_preservation_is_never_contradicted(catalog_data):
    rng = random.Random(41)
    for d in catalog_data + [A2, B2]:
        for group in rng.sample(small_groups(), 4):
            a = GaloisAction.trivial(group, d.ambient_rank)
            profile = GaloisService.inner_form_profile(d, a)
            assert profile.preservation_automatic
            assert GaloisService.preserves_invariants(d, a).preserved
