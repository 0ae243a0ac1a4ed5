"""
Text grammars: parsing and canonical printing of values, words and workspaces.

    iet breakpoints= 0, 1 - alpha translations= alpha, alpha - 1
    iet lengths= alpha, 1 - 2*alpha, alpha permutation= 3 2 1
    gn n=4 sigma=4 3 2 1 alpha=0, beta, 0, -beta
    relation: b a b^-1 a
"""

import re
from typing import Dict, List, Sequence, Tuple, Union

from ietlab.core.gn import GnElement
from ietlab.core.iet import Iet
from ietlab.core.perm import parse_permutation
from ietlab.core.scalar import Symbol, SymbolTable, parse_scalar
from ietlab.utils.exceptions import ParseError, SizeMismatch

Value = Union[Iet, GnElement]
Word = Tuple[Tuple[str, int], ...]

_KEYWORD = re.compile(r"\b([a-z]+)=")
_LETTER = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?\Z")
_SYMBOL = re.compile(r"symbol\s+(\S+)\s*=\s*(\S+)(?:\s+(\S+))?\s*\Z")
_BINDING = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?=(?:iet|gn)\b)")


def _fields(text: str, allowed: Sequence[str], line: int, offset: int) -> Dict[str, Tuple[str, int]]:
    matches = list(_KEYWORD.finditer(text))
    lead = text[: matches[0].start()] if matches else text
    if lead.strip():
        raise ParseError(f"unexpected {lead.strip()!r}", line, offset + len(lead) - len(lead.lstrip()) + 1)
    fields = {}
    for m, nxt in zip(matches, matches[1:] + [None]):
        key = m.group(1)
        if key not in allowed:
            raise ParseError(f"unknown field {key!r}", line, offset + m.start() + 1)
        if key in fields:
            raise ParseError(f"field {key!r} given twice", line, offset + m.start() + 1)
        end = nxt.start() if nxt else len(text)
        fields[key] = (text[m.end():end], offset + m.end())
    return fields


def _require(fields, key: str, line: int, column: int) -> Tuple[str, int]:
    if key not in fields:
        raise ParseError(f"missing field {key!r}", line, column)
    return fields[key]


def parse_scalar_list(text: str, table: SymbolTable, line: int = 1, offset: int = 0):
    out, pos = [], 0
    for piece in text.split(","):
        out.append(parse_scalar(piece, table, line, offset + pos))
        pos += len(piece) + 1
    return out


def parse_iet(text: str, table: SymbolTable, line: int = 1, offset: int = 0) -> Iet:
    body = text[3:]
    fields = _fields(body, ("breakpoints", "translations", "lengths", "permutation"), line, offset + 3)
    end = offset + len(text) + 1
    if "lengths" in fields:
        lengths_text, lengths_offset = fields["lengths"]
        lengths = parse_scalar_list(lengths_text, table, line, lengths_offset)
        perm_text, perm_offset = _require(fields, "permutation", line, end)
        permutation = parse_permutation(perm_text, len(lengths), line, perm_offset)
        return Iet.from_lengths(lengths, permutation)
    bp_text, bp_offset = _require(fields, "breakpoints", line, end)
    tr_text, tr_offset = _require(fields, "translations", line, end)
    breakpoints = parse_scalar_list(bp_text, table, line, bp_offset)
    translations = parse_scalar_list(tr_text, table, line, tr_offset)
    if len(breakpoints) != len(translations):
        raise ParseError(
            f"{len(breakpoints)} breakpoints but {len(translations)} translations", line, tr_offset + 1
        )
    return Iet.from_pieces(breakpoints, translations)


def parse_gn(text: str, table: SymbolTable, line: int = 1, offset: int = 0) -> GnElement:
    body = text[2:]
    fields = _fields(body, ("n", "sigma", "alpha"), line, offset + 2)
    end = offset + len(text) + 1
    n_text, n_offset = _require(fields, "n", line, end)
    try:
        n = int(n_text)
    except ValueError:
        raise ParseError(f"n must be a positive integer, not {n_text.strip()!r}", line, n_offset + 1)
    if n < 1:
        raise ParseError("n must be a positive integer", line, n_offset + 1)
    sigma_text, sigma_offset = _require(fields, "sigma", line, end)
    sigma = parse_permutation(sigma_text, n, line, sigma_offset)
    alpha_text, alpha_offset = _require(fields, "alpha", line, end)
    alpha = parse_scalar_list(alpha_text, table, line, alpha_offset)
    if len(alpha) != n:
        raise ParseError(f"expected {n} angles, found {len(alpha)}", line, alpha_offset + 1)
    try:
        return GnElement.make(alpha, sigma)
    except SizeMismatch as err:
        raise ParseError(str(err), line, offset + 1)


def parse_value(text: str, table: SymbolTable, line: int = 1, offset: int = 0) -> Value:
    stripped = text.lstrip()
    offset += len(text) - len(stripped)
    if stripped.startswith("iet") and stripped[3:4] in (" ", "\t"):
        return parse_iet(stripped.rstrip(), table, line, offset)
    if stripped.startswith("gn") and stripped[2:3] in (" ", "\t"):
        return parse_gn(stripped.rstrip(), table, line, offset)
    raise ParseError("expected a value starting with 'iet' or 'gn'", line, offset + 1)


def parse_word(text: str, line: int = 1, offset: int = 0) -> Word:
    out, pos = [], 0
    for token in text.split(" "):
        if token:
            m = _LETTER.match(token)
            if not m:
                raise ParseError(f"malformed generator power {token!r}", line, offset + pos + 1)
            out.append((m.group(1), int(m.group(2) or 1)))
        pos += len(token) + 1
    return tuple(out)


def format_word(word: Sequence[Tuple[str, int]]) -> str:
    if not word:
        return "id"
    return " ".join(name if e == 1 else f"{name}^{e}" for name, e in word)


def format_value(value: Value) -> str:
    return str(value)


def format_symbol(symbol: Symbol) -> str:
    return f"symbol {symbol.name} = {symbol.witness} {symbol.precision}"


def format_workspace(
    table: SymbolTable, bindings: Dict[str, Value], relations: Sequence[Word] = ()
) -> str:
    lines = [format_symbol(s) for s in table.entries]
    lines += [f"{name} = {format_value(v)}" for name, v in bindings.items()]
    lines += [f"relation: {format_word(w)}" for w in relations]
    return "\n".join(lines) + "\n"


class Document:
    """What one workspace text declares: bindings in order and relation words."""

    def __init__(self):
        self.bindings: Dict[str, Value] = {}
        self.relations: List[Word] = []


def parse_document(text: str, declare, table_of) -> Document:
    """Parse workspace text.

    ``declare(name, witness, precision, line)`` registers a symbol and
    ``table_of()`` returns the current symbol table, so that later lines see
    earlier declarations.
    """
    doc = Document()
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        indent = len(content) - len(content.lstrip())
        stripped = content.strip()
        if stripped.startswith("symbol ") or stripped.startswith("symbol\t"):
            m = _SYMBOL.match(stripped)
            if not m:
                raise ParseError("expected 'symbol NAME = WITNESS [PRECISION]'", number, indent + 1)
            precision = None
            if m.group(3) is not None:
                if not m.group(3).isdigit():
                    raise ParseError(f"precision {m.group(3)!r} is not an integer", number, indent + m.start(3) + 1)
                precision = int(m.group(3))
            declare(m.group(1), m.group(2), precision, number)
        elif stripped.startswith("relation:"):
            doc.relations.append(parse_word(stripped[9:], number, indent + 9))
        else:
            m = _BINDING.match(stripped)
            name, start = (m.group(1), m.end()) if m else ("main", 0)
            if name in doc.bindings:
                raise ParseError(f"{name!r} is bound twice", number, indent + 1)
            doc.bindings[name] = parse_value(stripped[start:], table_of(), number, indent + start)
    return doc
