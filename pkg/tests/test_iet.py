from fractions import Fraction

import pytest

from conftest import random_rational_iet
from ietlab.core import iet
from ietlab.core.gn import GnElement, to_iet
from ietlab.core.iet import Iet, NotFoundWithinBudget, NotOfThisForm, RestrictedRotation
from ietlab.core.intervals import IntervalSet
from ietlab.core.perm import Permutation
from ietlab.core.scalar import ONE, ZERO
from ietlab.utils.exceptions import InvalidIet, NotAReverser, OutOfDomain

HALF = Fraction(1, 2)


def test_lengths_and_pieces_describe_the_same_map(alpha):
    f = Iet.from_lengths([ONE - alpha, alpha], Permutation((2, 1)))
    assert f == Iet.rotation(alpha)
    assert f.breakpoints == (ZERO, ONE - alpha)
    assert f.translations == (alpha, alpha - 1)
    assert f.permutation() == Permutation((2, 1))
    assert f.lengths() == [ONE - alpha, alpha]


def test_canonical_form_merges_equal_translations():
    f = Iet.from_pieces([0, Fraction(1, 4), HALF], [HALF, HALF, -HALF])
    assert f.breakpoints == (ZERO, HALF)
    assert f.size == 2


@pytest.mark.parametrize(
    "breakpoints, translations",
    [
        ([Fraction(1, 4)], [0]),
        ([0, HALF], [0, 0, 0]),
        ([0, HALF], [Fraction(1, 4), 0]),
        ([0, HALF, Fraction(1, 4)], [0, 0, 0]),
    ],
)
def test_invalid_pieces(breakpoints, translations):
    with pytest.raises(InvalidIet):
        Iet.from_pieces(breakpoints, translations)


def test_invalid_lengths(alpha):
    with pytest.raises(InvalidIet):
        Iet.from_lengths([HALF, HALF, 0], Permutation.identity(3))
    with pytest.raises(InvalidIet):
        Iet.from_lengths([alpha, HALF], Permutation((2, 1)))


def test_evaluate(alpha):
    f = Iet.rotation(alpha)
    assert f.evaluate(0) == alpha
    assert f.evaluate(ONE - alpha) == ZERO
    assert f(HALF) == alpha + HALF
    with pytest.raises(OutOfDomain):
        f.evaluate(1)
    with pytest.raises(OutOfDomain):
        f.evaluate(-HALF)


def test_group_laws(rng):
    for _ in range(12):
        f, g, h = (random_rational_iet(rng, rng.randint(1, 4)) for _ in range(3))
        assert iet.compose(f, iet.inverse(f)).is_identity
        assert iet.compose(iet.compose(f, g), h) == iet.compose(f, iet.compose(g, h))
        x = Fraction(rng.randrange(60), 60)
        assert iet.compose(f, g).evaluate(x) == f.evaluate(g.evaluate(x))


def test_rotation_powers(alpha):
    f = Iet.rotation(alpha)
    assert iet.power(f, 3) == Iet.rotation(alpha * 3)
    assert iet.power(f, -1) == Iet.rotation(-alpha)
    assert iet.power(f, 0).is_identity


def test_rational_iets_are_periodic(rng):
    for _ in range(10):
        f = random_rational_iet(rng, rng.randint(1, 5))
        p = iet.period(f)
        assert isinstance(p, int)
        assert iet.power(f, p).is_identity
        assert all(not iet.power(f, k).is_identity for k in range(1, p))


def test_period_of_rotations(alpha):
    assert iet.period(Iet.rotation(Fraction(1, 3))) == 3
    assert iet.period(Iet.identity()) == 1
    missing = iet.period(Iet.rotation(alpha), 50)
    assert missing == NotFoundWithinBudget(50)
    assert iet.orbit(Iet.rotation(alpha), ZERO, 50) is None
    assert iet.orbit(Iet.rotation(Fraction(1, 4)), ZERO, 50) == [0, Fraction(1, 4), HALF, Fraction(3, 4)]


def test_fixed_points_and_images(alpha):
    f = Iet.restricted_rotations([(0, HALF, alpha - Fraction(1, 4))])
    assert f.fixed_points() == IntervalSet.of([(HALF, 1)])
    left = IntervalSet.of([(0, HALF)])
    assert f.image(left) == left
    assert f.is_identity_on(IntervalSet.of([(HALF, 1)]))


def test_reverser_family(alpha):
    f = to_iet(GnElement.make([alpha, -alpha], Permutation.identity(2)))
    h = to_iet(GnElement.lift(Permutation((2, 1))))
    assert iet.is_reversed_by(f, h)
    for s in (-1, 0, 1, 2):
        assert iet.is_reversed_by(f, iet.reverser_family(f, h, s))
    with pytest.raises(NotAReverser):
        iet.reverser_family(f, Iet.identity(), 1)


def test_bp_growth_of_a_rotation_is_bounded(alpha):
    growth = iet.bp_growth(Iet.rotation(alpha), ZERO, 5)
    assert growth.counts == (2, 2, 2, 2, 2)
    assert growth.estimate == Fraction(2, 5)


def test_first_return_of_a_rotation(alpha):
    induced = iet.first_return(Iet.rotation(alpha), 0, HALF)
    assert sum(induced.lengths(), ZERO) == HALF
    assert induced.permutation().n in (2, 3)
    assert induced.floors == IntervalSet.full()


def test_detect_restricted_rotations(alpha, beta):
    d1 = alpha - Fraction(1, 4)
    f = Iet.restricted_rotations([(0, HALF, d1), (HALF, 1, beta)])
    assert iet.invariant_cuts(f) == [HALF]
    assert iet.detect_restricted_rotation_product(f) == [
        RestrictedRotation(ZERO, HALF, d1),
        RestrictedRotation(HALF, ONE, beta),
    ]


def test_detect_rejects_other_maps():
    f = Iet.from_lengths([Fraction(1, 4), HALF, Fraction(1, 4)], Permutation((3, 2, 1)))
    assert isinstance(iet.detect_restricted_rotation_product(f), NotOfThisForm)


def test_restricted_rotation_angles_must_fit(alpha):
    with pytest.raises(InvalidIet):
        Iet.restricted_rotations([(0, alpha, HALF)])
