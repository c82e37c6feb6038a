"""Random groups and actions for the property suites"""
import random
from typing import Dict, List, Tuple

from src.models.datum import HomogeneousSphericalDatum
from src.models.galois import FiniteGroup, GaloisAction
from src.models.lattice import IntegerMatrix


def small_groups() -> List[FiniteGroup]:
    """Groups of order at most 8"""
    z2 = FiniteGroup.cyclic(2)
    return [FiniteGroup.cyclic(n) for n in range(1, 9)] + [
        FiniteGroup.direct_product(z2, z2),
        FiniteGroup.direct_product(z2, FiniteGroup.cyclic(4)),
        FiniteGroup.direct_product(z2, FiniteGroup.direct_product(z2, z2)),
        FiniteGroup.symmetric3(),
        FiniteGroup.dihedral(4),
        FiniteGroup.quaternion(),
    ]


def random_action(rng: random.Random, group: FiniteGroup, max_points: int) -> Dict[int, Tuple[int, ...]]:
    """A permutation action on at most ``max_points`` points, a union of coset actions"""
    blocks, total = [], 0
    for _ in range(max_points):
        subgroup = group.closure(rng.sample(list(group.elements), rng.randint(0, min(2, group.order))))
        size = group.order // len(subgroup)
        if total + size > max_points:
            continue
        blocks.append(group.coset_action(subgroup))
        total += size
        if rng.random() < 0.3:
            break
    action = {}
    for g in group.elements:
        permutation, offset = [], 0
        for block in blocks:
            permutation += [offset + i for i in block[g]]
            offset += len(block[g])
        action[g] = tuple(permutation)
    return action


def compose_tuples(first: Tuple[int, ...], then: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(then[i] for i in first)


def mutate(d: HomogeneousSphericalDatum, **changes) -> HomogeneousSphericalDatum:
    return HomogeneousSphericalDatum.model_validate({**d.model_dump(mode="json"), **changes})


def colors_of(d: HomogeneousSphericalDatum):
    return d.model_dump(mode="json")["colors"]


def distinct_rho_datum() -> HomogeneousSphericalDatum:
    """alpha in Sigma with two colors of different rho"""
    return HomogeneousSphericalDatum.model_validate({
        "name": "distinct-rho",
        "ambient_rank": 2,
        "weight_basis": [[1, 0], [0, 1]],
        "simple_roots": [{"label": "alpha", "vector": [1, 0]}],
        "simple_coroots": [[2, 0]],
        "spherical_roots": [[1, 0]],
        "colors": [
            {"name": "D+", "rho": ["1", "1"], "moved_by": ["alpha"]},
            {"name": "D-", "rho": ["1", "-1"], "moved_by": ["alpha"]},
        ],
    })


def horospherical_datum() -> HomogeneousSphericalDatum:
    return HomogeneousSphericalDatum.model_validate({
        "name": "horospherical",
        "ambient_rank": 1,
        "weight_basis": [[1]],
        "simple_roots": [{"label": "alpha", "vector": [1]}],
        "simple_coroots": [[2]],
        "spherical_roots": [],
        "colors": [{"name": "D", "rho": ["1"], "moved_by": ["alpha"]}],
    })


def power_action(group: FiniteGroup, generator_image, rank: int) -> GaloisAction:
    """eps(g^k) = M^k for a cyclic group"""
    m = IntegerMatrix.from_rows(generator_image)
    eps, power = {}, IntegerMatrix.identity(rank)
    for k in range(group.order):
        eps[k] = power
        power = power @ m
    return GaloisAction(group=group, eps=eps)


def asymmetric_datum() -> HomogeneousSphericalDatum:
    """PGL2/T x PGL2/N(T): swapping the factors does not preserve the weight lattice"""
    return HomogeneousSphericalDatum.model_validate({
        "name": "asymmetric",
        "ambient_rank": 2,
        "weight_basis": [[1, 0], [0, 2]],
        "simple_roots": [{"label": "alpha1", "vector": [1, 0]}, {"label": "alpha2", "vector": [0, 1]}],
        "simple_coroots": [[2, 0], [0, 2]],
        "spherical_roots": [[1, 0], [0, 1]],
        "colors": [
            {"name": "D1+", "rho": ["1", "0"], "moved_by": ["alpha1"]},
            {"name": "D1-", "rho": ["1", "0"], "moved_by": ["alpha1"]},
            {"name": "D2", "rho": ["0", "1"], "moved_by": ["alpha2"]},
        ],
    })


def torus_factor_datum() -> HomogeneousSphericalDatum:
    """PGL2/T times a one-dimensional torus: characters may take any value on the torus factor"""
    return HomogeneousSphericalDatum.model_validate({
        "name": "torus-factor",
        "ambient_rank": 2,
        "weight_basis": [[1, 0], [0, 1]],
        "simple_roots": [{"label": "alpha", "vector": [1, 0]}],
        "simple_coroots": [[2, 0]],
        "spherical_roots": [[1, 0]],
        "colors": [
            {"name": "D+", "rho": ["1", "0"], "moved_by": ["alpha"]},
            {"name": "D-", "rho": ["1", "0"], "moved_by": ["alpha"]},
        ],
    })
