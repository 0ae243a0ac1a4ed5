from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import TABLE, sym
from ietlab.core.scalar import (
    ONE,
    Scalar,
    SymbolTable,
    compare,
    floor,
    format_scalar,
    parse_scalar,
    q_rank,
    ratio_is_rational,
    reduce_mod,
    sign,
)
from ietlab.utils.exceptions import (
    DuplicateSymbol,
    InsufficientPrecision,
    MalformedWitness,
    MixedSymbolTables,
    ParseError,
)

scalars = st.builds(
    lambda q, a, b: Scalar.rational(q) + sym("alpha", a) + sym("beta", b),
    st.fractions(min_value=-5, max_value=5, max_denominator=12),
    st.integers(-3, 3),
    st.integers(-3, 3),
)


def test_parse_and_format(alpha, beta):
    assert parse_scalar("1 - alpha", TABLE) == ONE - alpha
    assert parse_scalar("-1/3 + 2*beta - alpha", TABLE) == beta * 2 - alpha - Fraction(1, 3)
    assert format_scalar(alpha / 2) == "1/2*alpha"
    assert format_scalar(Fraction(1, 3) - alpha) == "1/3 - alpha"
    assert format_scalar(-alpha) == "-alpha"
    assert format_scalar(Scalar()) == "0"


def test_parse_error_points_at_the_column():
    with pytest.raises(ParseError) as info:
        parse_scalar("1 + gamma9", TABLE)
    assert info.value.column == 5
    assert "undeclared symbol 'gamma9'" in str(info.value)


def test_parse_rejects_zero_denominator():
    with pytest.raises(ParseError, match="zero denominator"):
        parse_scalar("1/0", TABLE)


def test_signs_come_from_witnesses(alpha, beta):
    assert sign(alpha - Fraction(41421, 100000)) == 1
    assert sign(alpha - Fraction(41422, 100000)) == -1
    assert compare(alpha, beta) == 1
    assert alpha > beta
    assert floor(alpha * 7) == 2
    assert floor(-alpha) == -1


def test_equality_is_exact(alpha, beta):
    assert alpha + beta - beta == alpha
    assert alpha != alpha + Fraction(1, 10**60)


def test_product_of_irrationals_is_not_modelled(alpha, beta):
    with pytest.raises(TypeError):
        alpha * beta


def test_insufficient_precision():
    table = SymbolTable().register("s", "0.5", 1)
    s = Scalar.symbol(table, "s")
    with pytest.raises(InsufficientPrecision):
        sign(s - Fraction(1, 2))


def test_symbol_registration_errors():
    table = SymbolTable().register("s", "0.25")
    with pytest.raises(DuplicateSymbol):
        table.register("s", "0.25")
    with pytest.raises(MalformedWitness):
        table.register("t", "zero point five")
    with pytest.raises(MalformedWitness):
        table.register("t", "0.25", 10)


def test_tables_are_append_only_snapshots():
    first = SymbolTable().register("x", "0.1")
    second = first.register("y", "0.2")
    assert second.extends(first)
    x, y = Scalar.symbol(first, "x"), Scalar.symbol(second, "y")
    assert (x + y).table is second


def test_unrelated_tables_do_not_mix():
    x = Scalar.symbol(SymbolTable().register("x", "0.1"), "x")
    y = Scalar.symbol(SymbolTable().register("y", "0.2"), "y")
    with pytest.raises(MixedSymbolTables):
        x + y


def test_reduce_mod(alpha):
    assert reduce_mod(alpha + 3, 1).representative == alpha
    assert reduce_mod(-alpha, Fraction(1, 4)).representative == Fraction(1, 2) - alpha
    assert reduce_mod(Fraction(5, 4), Fraction(1, 2)).representative == Fraction(1, 4)


def test_q_rank(alpha, beta):
    assert q_rank([alpha, alpha * 2, Fraction(1, 3)]) == 2
    assert q_rank([alpha, alpha * 2, Fraction(1, 3)], include_one=False) == 2
    assert q_rank([ONE - alpha, alpha], include_one=False) == 2
    assert q_rank([alpha, beta, alpha + beta]) == 3
    assert ratio_is_rational(alpha * 2, alpha)
    assert not ratio_is_rational(alpha, beta)
    assert not ratio_is_rational(alpha, Scalar.rational(Fraction(1, 2)))


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_ring_laws(x, y):
    assert (x + y) - y == x
    assert x + y == y + x
    assert compare(x, y) == -compare(y, x)


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_format_parses_back(x):
    assert parse_scalar(format_scalar(x), TABLE) == x
