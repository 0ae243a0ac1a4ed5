from fractions import Fraction

import pytest

from conftest import random_rational_iet, sym
from ietlab.core.decompose import (
    Minimal,
    Periodic,
    decompose,
    is_irreducible,
    periodic_towers,
)
from ietlab.core.iet import Iet, first_return, power
from ietlab.core.intervals import IntervalSet
from ietlab.core.perm import Permutation
from ietlab.core.scalar import q_rank

HALF = Fraction(1, 2)


@pytest.mark.parametrize(
    "images, expected",
    [((2, 1), True), ((1, 2), False), ((2, 1, 3), False), ((3, 2, 1), True), ((2, 3, 1), True), ((1,), True)],
)
def test_irreducibility(images, expected):
    assert is_irreducible(Permutation(images)) is expected


def test_rational_maps_are_periodic_everywhere(rng):
    for _ in range(200):
        f = random_rational_iet(rng, rng.randint(2, 6), rng.choice((12, 30, 60)))
        result = decompose(f, 500)
        assert result.is_periodic
        periods = [c.kind.period for c in result.components]
        assert len(set(periods)) == len(periods)
        assert result.periodic_set == IntervalSet.full()
        for component in result.components:
            p = component.kind.period
            assert power(f, p).is_identity_on(component.support)
            assert not any(power(f, d).is_identity_on(component.support) for d in range(1, p) if p % d == 0)


def test_irrational_rotation_is_minimal(alpha):
    result = decompose(Iet.rotation(alpha), 300)
    assert result.is_minimal_everywhere
    (component,) = result.components
    assert component.support == IntervalSet.full()
    certificate = component.kind.certificate
    assert certificate.irreducible
    assert certificate.q_rank_value == certificate.permutation.n == 2


def test_mixed_restricted_rotations(alpha):
    f = Iet.restricted_rotations([(0, HALF, alpha - Fraction(1, 4)), (HALF, 1, Fraction(1, 4))])
    result = decompose(f, 300)
    minimal, periodic = result.components
    assert isinstance(minimal.kind, Minimal)
    assert minimal.support == IntervalSet.of([(0, HALF)])
    assert periodic.kind == Periodic(2)
    assert periodic.support == IntervalSet.of([(HALF, 1)])


def test_towers_of_a_rational_rotation():
    (tower,) = periodic_towers(Iet.rotation(Fraction(1, 3)))
    assert tower.height == 3
    assert [lo for lo, _ in tower.floors] == [0, Fraction(1, 3), Fraction(2, 3)]


def test_periodic_components_are_grouped_by_period():
    f = Iet.from_lengths(
        [Fraction(1, 6), Fraction(1, 6), Fraction(1, 3), Fraction(1, 3)],
        Permutation((2, 1, 3, 4)),
    )
    result = decompose(f, 100)
    assert [c.kind for c in result.components] == [Periodic(2), Periodic(1)]
    assert result.components[1].support == IntervalSet.of([(Fraction(1, 3), 1)])


def recheck(f, certificate):
    lo, hi = certificate.interval
    induced = first_return(f, lo, hi, 5000)
    pi = induced.permutation()
    assert pi == certificate.permutation
    assert is_irreducible(pi)
    assert q_rank(induced.lengths(), include_one=False) == pi.n


def random_minimal_map(rng):
    if rng.random() < 0.5:
        angle = sym(rng.choice(("alpha", "beta", "gamma1"))) / rng.randint(1, 4)
        return Iet.rotation(angle + Fraction(rng.randint(0, 5), 6))
    cuts = sorted(rng.sample(range(1, 12), rng.randint(1, 2)))
    bounds = [Fraction(0)] + [Fraction(c, 12) for c in cuts] + [Fraction(1)]
    blocks = []
    for lo, hi in zip(bounds, bounds[1:]):
        blocks.append((lo, hi, sym(rng.choice(("alpha", "beta", "gamma1"))) * (hi - lo) / rng.randint(2, 4)))
    return Iet.restricted_rotations(blocks)


def test_symbolic_maps_carry_keane_certificates(rng):
    for _ in range(50):
        f = random_minimal_map(rng)
        result = decompose(f, 300)
        assert result.is_minimal_everywhere
        covered = IntervalSet()
        for component in result.components:
            assert f.image(component.support) == component.support
            recheck(f, component.kind.certificate)
            covered = covered.union(component.support)
        assert covered == IntervalSet.full()
