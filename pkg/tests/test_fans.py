import random
from fractions import Fraction

import pytest

from src.core.errors import AmbiguousColorAction, DimensionMismatch, InconsistentCover, NotPointed, UnknownColor
from src.models.fan import ColoredCone, ColoredFan, EmbeddingOutcome, Hypothesis
from src.models.galois import FiniteGroup, GaloisAction
from src.services.fans import FanService
from src.services.fixtures import FixtureLoader
from tests.helpers import power_action

SWAP = [[0, 1], [1, 0]]
FACTOR_SWAP = {"D1+": "D2+", "D1-": "D2-", "D2+": "D1+", "D2-": "D1-"}


def fan(*cones, **kwargs) -> ColoredFan:
    return ColoredFan(
        cones=[ColoredCone(generators=generators, colors=frozenset(colors)) for generators, colors in cones],
        **kwargs,
    )


def test_fourier_motzkin():
    one = Fraction(1)
    assert not FanService.fourier_motzkin_feasible([((one,), one), ((-one,), Fraction(-2))], 1)
    assert FanService.fourier_motzkin_feasible([((one,), Fraction(2)), ((-one,), -one)], 1)
    assert FanService.fourier_motzkin_feasible([((one, one), Fraction(0)), ((-one, 0 * one), Fraction(3))], 2)


def test_in_cone():
    assert FanService.in_cone([(1, 0), (0, 1)], (1, 1))
    assert not FanService.in_cone([(1, 0), (0, 1)], (-1, 0))
    assert FanService.in_cone([(1, 0), (1, 1), (0, 1)], (2, 1))
    assert not FanService.in_cone([(1, 0), (1, 1), (0, 1)], (1, -1))
    assert FanService.in_cone([], (0, 0))
    assert not FanService.in_cone([(1, 1)], (1, 2))


def test_canonical_cone_examples():
    canonical = FanService.canonicalize_cone(ColoredCone(generators=[(2, 0), (0, 1), (1, 1)], colors={"D"}))
    assert canonical.rays == ((0, 1), (1, 0))
    assert canonical.colors == frozenset({"D"})
    assert FanService.canonicalize_cone(ColoredCone(generators=[("1/2", "1/3")])).rays == ((3, 2),)
    assert FanService.canonicalize_cone(ColoredCone(generators=[])).rays == ()


def test_cones_with_lines_are_rejected():
    with pytest.raises(NotPointed):
        FanService.canonicalize_cone(ColoredCone(generators=[(1, 0), (-1, 0)]))
    with pytest.raises(NotPointed):
        FanService.canonicalize_cone(ColoredCone(generators=[(1, 0), (0, 1), (-1, -1)]))


def test_canonical_form_ignores_generator_order_and_is_idempotent():
    rng = random.Random(17)
    for _ in range(60):
        dimension = rng.randint(1, 3)
        generators = [tuple(rng.randint(-2, 3) for _ in range(dimension)) for _ in range(rng.randint(1, 4))]
        generators = [g for g in generators if any(g)]
        shuffled = generators[:]
        rng.shuffle(shuffled)
        try:
            canonical = FanService.canonicalize_cone(ColoredCone(generators=generators))
        except NotPointed:
            with pytest.raises(NotPointed):
                FanService.canonicalize_cone(ColoredCone(generators=shuffled))
            continue
        assert FanService.canonicalize_cone(ColoredCone(generators=shuffled)) == canonical
        assert FanService.canonicalize_cone(ColoredCone(generators=canonical.rays)) == canonical
        for g in generators:
            assert FanService.in_cone(canonical.rays, g)


def test_canonical_fan_drops_duplicates():
    f = fan(([(1, 0), (0, 1)], []), ([(0, 2), (3, 0), (1, 1)], []), ([(1, 0)], []))
    assert len(FanService.canonicalize_fan(f)) == 2


def test_trivial_action_stabilizes_any_fan(product_datum, asymmetric_fan):
    report = FanService.is_gamma_stable(asymmetric_fan, product_datum, GaloisAction.trivial(FiniteGroup.cyclic(2), 2))
    assert report.stable and report.fan_permuted and report.failures == ()


def test_swap_stability(product_datum, symmetric_fan, asymmetric_fan, swap_z2):
    assert FanService.is_gamma_stable(symmetric_fan, product_datum, swap_z2).stable

    report = FanService.is_gamma_stable(asymmetric_fan, product_datum, swap_z2)
    assert not report.stable and not report.fan_permuted
    assert {failure.cone for failure in report.failures} == {0, 1}
    moved = next(failure for failure in report.failures if failure.cone == 1)
    assert moved.element == 1 and moved.cone_moved and moved.colors_moved
    assert moved.image.rays == ((0, 1),)
    assert moved.image.colors == frozenset({"D2+", "D2-"})


def test_generator_check_matches_full_check(product_datum, symmetric_fan, asymmetric_fan):
    actions = [power_action(FiniteGroup.cyclic(n), SWAP, 2) for n in (2, 4, 6)]
    actions.append(GaloisAction.trivial(FiniteGroup.dihedral(3), 2))
    for f in (symmetric_fan, asymmetric_fan):
        for a in actions:
            full = FanService.is_gamma_stable(f, product_datum, a)
            on_generators = FanService.is_gamma_stable(f, product_datum, a, elements=a.group.generators)
            assert full.stable == on_generators.stable


def test_split_fiber_needs_a_color_permutation(product_datum, swap_z2):
    split = fan(([(1, 0)], ["D1+"]), ([(0, 1)], ["D2+"]))
    with pytest.raises(AmbiguousColorAction):
        FanService.is_gamma_stable(split, product_datum, swap_z2)

    report = FanService.is_gamma_stable(split, product_datum, swap_z2, color_permutations={1: FACTOR_SWAP})
    assert not report.stable
    assert report.fan_permuted
    assert report.failures[0].image.colors == frozenset({"D2+"})

    stored = split.model_copy(update={"color_permutations": {1: FACTOR_SWAP}})
    assert FanService.is_gamma_stable(stored, product_datum, swap_z2).fan_permuted

    off_fiber = {"D1+": "D1+", "D1-": "D1-", "D2+": "D2+", "D2-": "D2-"}
    with pytest.raises(InconsistentCover):
        FanService.is_gamma_stable(split, product_datum, swap_z2, color_permutations={1: off_fiber})


def test_fan_must_match_the_datum(product_datum, swap_z2):
    with pytest.raises(UnknownColor):
        FanService.is_gamma_stable(fan(([(1, 0)], ["E"])), product_datum, swap_z2)
    with pytest.raises(DimensionMismatch):
        FanService.is_gamma_stable(fan(([(1,)], [])), product_datum, swap_z2)


def test_embedding_verdicts(self_normalizing, pgl2_torus, product_datum, trivial_z2_rank1, swap_z2, symmetric_fan, asymmetric_fan):
    complete = FixtureLoader.load_fan("fan-self-normalizing")
    verdict = FanService.embedding_verdict(complete, self_normalizing, trivial_z2_rank1)
    assert verdict.verdict is EmbeddingOutcome.EXISTS_UNIQUE and verdict.failed == ()

    line = fan(([(1,)], ["D+", "D-"]))
    assert FanService.embedding_verdict(line, pgl2_torus, trivial_z2_rank1).failed == (Hypothesis.SELF_NORMALIZING,)

    symmetric = FanService.embedding_verdict(symmetric_fan, product_datum, swap_z2)
    assert symmetric.verdict is EmbeddingOutcome.HYPOTHESES_NOT_MET
    assert set(symmetric.failed) == {Hypothesis.INNER_FORM, Hypothesis.SELF_NORMALIZING}

    assert Hypothesis.GAMMA_STABLE in FanService.embedding_verdict(asymmetric_fan, product_datum, swap_z2).failed

    split = fan(([(1, 0)], ["D1+"]))
    ambiguous = FanService.embedding_verdict(split, product_datum, swap_z2)
    assert Hypothesis.GAMMA_STABLE in ambiguous.failed
    assert ambiguous.notes
