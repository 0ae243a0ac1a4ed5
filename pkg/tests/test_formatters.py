from fractions import Fraction

import pytest

from conftest import TABLE, WITNESSES
from ietlab.core.gn import GnElement
from ietlab.core.iet import Iet
from ietlab.core.perm import Permutation
from ietlab.core.scalar import SymbolTable
from ietlab.utils.exceptions import ParseError
from ietlab.utils.formatters import (
    format_value,
    format_word,
    format_workspace,
    parse_document,
    parse_value,
    parse_word,
)


def collect(text):
    tables = [SymbolTable()]

    def declare(name, witness, precision, line):
        tables[0] = tables[0].register(name, witness, precision)

    doc = parse_document(text, declare, lambda: tables[0])
    return tables[0], doc


def test_iet_forms_agree(alpha):
    by_pieces = parse_value("iet breakpoints= 0, 1 - alpha translations= alpha, alpha - 1", TABLE)
    by_lengths = parse_value("iet lengths= 1 - alpha, alpha permutation= 2 1", TABLE)
    assert by_pieces == by_lengths == Iet.rotation(alpha)


def test_gn_literal(alpha):
    f = parse_value("  gn n=3 sigma=(1 3) alpha=alpha, 0, -alpha", TABLE)
    assert f == GnElement.make([alpha, 0, -alpha], Permutation((3, 2, 1)))
    assert parse_value(format_value(f), TABLE) == f


@pytest.mark.parametrize(
    "text, column",
    [
        ("gn n=2 sigma=2 1 alpha=0", 24),
        ("gn n=2 sigma=2 1 beta=0, 0", 18),
        ("rotation alpha", 1),
        ("iet lengths= 1/2, 1/2 permutation= 2 1 3", 36),
        ("gn n=x sigma=1 alpha=0", 6),
    ],
)
def test_parse_errors_carry_a_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_value(text, TABLE)
    assert info.value.line == 1
    assert info.value.column == column


def test_words():
    word = parse_word(" b a b^-1  a^2")
    assert word == (("b", 1), ("a", 1), ("b", -1), ("a", 2))
    assert format_word(word) == "b a b^-1 a^2"
    assert format_word(()) == "id"
    with pytest.raises(ParseError) as info:
        parse_word("a b^x")
    assert info.value.column == 3


def test_document():
    table, doc = collect(
        f"""# two maps
symbol alpha = {WITNESSES['alpha']}
f = iet lengths= alpha, 1 - alpha permutation= 2 1
g = gn n=2 sigma=2 1 alpha=0, alpha   # trailing comment
relation: f g f^-1 g
"""
    )
    assert table.names == ("alpha",)
    assert list(doc.bindings) == ["f", "g"]
    assert isinstance(doc.bindings["g"], GnElement)
    assert doc.relations == [(("f", 1), ("g", 1), ("f", -1), ("g", 1))]


def test_bare_value_binds_main():
    _, doc = collect("iet lengths= 1/3, 2/3 permutation= 2 1\n")
    assert doc.bindings["main"] == Iet.rotation(Fraction(2, 3))


def test_document_errors_report_the_line():
    with pytest.raises(ParseError) as info:
        collect("f = gn n=1 sigma=1 alpha=0\nf = gn n=1 sigma=1 alpha=0\n")
    assert info.value.line == 2
    with pytest.raises(ParseError) as info:
        collect("\n\nsymbol alpha\n")
    assert (info.value.line, info.value.column) == (3, 1)
    with pytest.raises(ParseError) as info:
        collect("symbol alpha = 0.41 many\n")
    assert info.value.line == 1


def test_workspace_text_parses_back(alpha):
    bindings = {
        "a": GnElement.make([alpha / 2, 0, Fraction(1, 6), -alpha], Permutation((4, 3, 2, 1))),
        "f": Iet.rotation(alpha),
    }
    relations = [(("a", 2),), (("f", 1), ("a", -1))]
    text = format_workspace(TABLE, bindings, relations)
    table, doc = collect(text)
    assert table.names == TABLE.names
    assert doc.bindings == bindings
    assert doc.relations == relations
