from fractions import Fraction

import pytest

from ietlab.core.gn import GnElement, to_iet
from ietlab.core.iet import Iet
from ietlab.core.perm import Permutation
from ietlab.core.pl import PlMap, conjugate_by_pl, normalize_restricted_rotations
from ietlab.utils.exceptions import InvalidPlMap, NotAnIet, NotOfThisFormError

QUARTER = Fraction(1, 4)


def test_stretching_and_inverse():
    R = PlMap.stretching([(0, QUARTER), (QUARTER, 1)])
    assert R.slopes == (Fraction(2), Fraction(2, 3))
    assert R.evaluate(QUARTER) == Fraction(1, 2)
    assert R.evaluate(Fraction(5, 8)) == Fraction(3, 4)
    back = R.inverse()
    for x in (0, Fraction(1, 8), QUARTER, Fraction(7, 8)):
        assert back.evaluate(R.evaluate(x)) == x


def test_invalid_maps():
    with pytest.raises(InvalidPlMap):
        PlMap.from_pieces([0, Fraction(1, 2)], [1, 1], [0, Fraction(1, 4)])
    with pytest.raises(InvalidPlMap):
        PlMap.from_pieces([0], [-1], [1])


def test_irrational_supports_cannot_be_stretched(alpha):
    with pytest.raises(NotOfThisFormError):
        PlMap.stretching([(0, alpha), (alpha, 1)])


def test_normalize_two_restricted_rotations(alpha, beta):
    phi = Iet.restricted_rotations([(0, QUARTER, alpha / 4), (QUARTER, 1, beta)])
    R, F = normalize_restricted_rotations(phi)
    assert F == GnElement.make([alpha / 2, beta * Fraction(2, 3)], Permutation.identity(2))
    assert conjugate_by_pl(phi, R) == to_iet(F)
    assert conjugate_by_pl(to_iet(F), R.inverse()) == phi


def test_conjugate_must_stay_an_iet(alpha):
    R = PlMap.stretching([(0, QUARTER), (QUARTER, 1)])
    with pytest.raises(NotAnIet) as info:
        conjugate_by_pl(Iet.rotation(alpha), R)
    assert info.value.interval is not None


def test_normalize_rejects_other_maps():
    f = Iet.from_lengths([QUARTER, Fraction(1, 2), QUARTER], Permutation((3, 2, 1)))
    with pytest.raises(NotOfThisFormError):
        normalize_restricted_rotations(f)
