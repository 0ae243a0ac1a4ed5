import pytest

from conftest import random_permutation
from ietlab.core.perm import (
    Permutation,
    cycle_decomposition,
    involutions,
    is_reverser,
    parse_permutation,
    reversing_involution,
    reversing_involutions,
)
from ietlab.utils.exceptions import ParseError, SizeMismatch


def test_composition_applies_right_first():
    s = Permutation((2, 3, 1))
    r = Permutation((2, 1, 3))
    assert (s * r)(1) == s(r(1)) == 3
    assert (s * r).images == (3, 2, 1)


def test_cycles_and_order():
    s = Permutation.from_cycles(5, [(1, 3), (2, 4, 5)])
    assert cycle_decomposition(s) == [[1, 3], [2, 4, 5]]
    assert s.order() == 6
    assert s.cycle_string() == "(1 3)(2 4 5)"
    assert Permutation.identity(3).cycle_string() == "()"
    assert Permutation.cycle(4).images == (2, 3, 4, 1)


def test_power_and_inverse():
    s = Permutation.from_cycles(5, [(1, 3), (2, 4, 5)])
    assert s.power(6).is_identity
    assert s.power(-1) == s.inverse()
    assert (s * s.inverse()).is_identity


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        Permutation.identity(2) * Permutation.identity(3)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 26)])
def test_number_of_involutions(n, count):
    found = list(involutions(n))
    assert len(found) == count
    assert all(t.is_involution for t in found)
    assert len(set(found)) == count


def test_reversing_involution_reverses(rng):
    for n in range(1, 8):
        for _ in range(10):
            s = random_permutation(rng, n)
            tau = reversing_involution(s)
            assert tau.is_involution
            assert is_reverser(tau, s)


def test_reversing_involutions_of_a_cycle():
    # the dihedral reflections of an n-cycle
    assert len(list(reversing_involutions(Permutation.cycle(5)))) == 5
    assert len(list(reversing_involutions(Permutation.cycle(4)))) == 4


@pytest.mark.parametrize(
    "text, images",
    [("2 1 4 3", (2, 1, 4, 3)), ("(1 2)(3 4)", (2, 1, 4, 3)), ("(1 4)(2 3)", (4, 3, 2, 1)), ("()", (1,))],
)
def test_parse_permutation(text, images):
    assert parse_permutation(text).images == images


def test_parse_permutation_with_size():
    assert parse_permutation("(1 2)", 4).images == (2, 1, 3, 4)
    with pytest.raises(ParseError):
        parse_permutation("1 2 3", 4)
    with pytest.raises(ParseError):
        parse_permutation("(1 2)(2 3)", 3)
    with pytest.raises(ParseError):
        parse_permutation("1 1 2")
