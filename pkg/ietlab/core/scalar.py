"""
Exact real numbers ``q0 + q1*s1 + ... + qm*sm`` over declared symbols.

The symbols of a :class:`SymbolTable` are assumed to be rationally independent
together with 1; every exactness guarantee of the library is conditional on that
declaration. Each symbol carries a decimal witness which is only ever used to
decide the sign of a nonzero combination, never to decide equality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from sympy import Matrix, Rational

from ietlab.utils.exceptions import (
    DuplicateSymbol,
    InsufficientPrecision,
    MalformedWitness,
    MixedSymbolTables,
    ParseError,
)

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_DECIMAL = re.compile(r"\s*([+-]?)(\d+)(?:\.(\d*))?\s*\Z")

# digits used on the first attempt to separate a combination from 0
_FIRST_DIGITS = 6


@dataclass(frozen=True)
class Symbol:
    name: str
    witness: str
    precision: int

    def enclosure(self, digits: int) -> Tuple[Fraction, Fraction]:
        return _enclosure(self.witness, self.precision, digits)


@lru_cache(maxsize=8192)
def _enclosure(witness: str, precision: int, digits: int) -> Tuple[Fraction, Fraction]:
    sign, whole, frac = _DECIMAL.match(witness).groups()
    k = min(digits, precision)
    value = Fraction(int(whole + (frac or "")[:k].ljust(k, "0")), 10**k)
    if sign == "-":
        value = -value
    # truncation error plus the declared error of the witness itself
    radius = Fraction(1, 10**k) + Fraction(1, 10**precision)
    return value - radius, value + radius


@dataclass(frozen=True)
class SymbolTable:
    """Append-only, snapshot-on-register list of symbols."""

    entries: Tuple[Symbol, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {s.name: i for i, s in enumerate(self.entries)}
        )

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        return self._index[name]

    def symbol(self, name: str) -> Symbol:
        return self.entries[self._index[name]]

    def register(
        self, name: str, witness: str, precision: Optional[int] = None
    ) -> "SymbolTable":
        if not _IDENTIFIER.match(name or ""):
            raise MalformedWitness(f"{name!r} is not an identifier")
        if name in self._index:
            raise DuplicateSymbol(f"symbol {name!r} is already registered")
        match = _DECIMAL.match(witness or "")
        if not match:
            raise MalformedWitness(f"witness {witness!r} of {name!r} is not a decimal")
        available = len(match.group(3) or "")
        if precision is None:
            precision = available
        if precision < 1 or precision > available:
            raise MalformedWitness(
                f"witness of {name!r} has {available} decimals, "
                f"cannot claim {precision} correct digits"
            )
        return SymbolTable(self.entries + (Symbol(name, witness.strip(), precision),))

    def extends(self, other: "SymbolTable") -> bool:
        return self.entries[: len(other.entries)] == other.entries


def register_symbol(
    table: SymbolTable, name: str, witness: str, precision: Optional[int] = None
) -> SymbolTable:
    return table.register(name, witness, precision)


def merge_tables(
    a: Optional[SymbolTable], b: Optional[SymbolTable]
) -> Optional[SymbolTable]:
    if a is None:
        return b
    if b is None or a is b:
        return a
    if a.extends(b):
        return a
    if b.extends(a):
        return b
    raise MixedSymbolTables("operands live over unrelated symbol tables")


Rationalish = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class Scalar:
    constant: Fraction = Fraction(0)
    coefficients: Tuple[Tuple[str, Fraction], ...] = ()
    table: Optional[SymbolTable] = None

    # ---- construction ----

    @classmethod
    def rational(cls, q: Rationalish) -> "Scalar":
        return cls(Fraction(q))

    @classmethod
    def symbol(cls, table: SymbolTable, name: str, coefficient: Rationalish = 1):
        if name not in table:
            raise ParseError(f"undeclared symbol {name!r}")
        return _build(Fraction(0), {name: Fraction(coefficient)}, table)

    @property
    def is_rational(self) -> bool:
        return not self.coefficients

    def coefficient(self, name: str) -> Fraction:
        for n, q in self.coefficients:
            if n == name:
                return q
        return Fraction(0)

    # ---- ring operations ----

    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return _combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return _combine(self, other, -1)

    def __rsub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return _combine(other, self, -1)

    def __neg__(self):
        return Scalar(
            -self.constant, tuple((n, -q) for n, q in self.coefficients), self.table
        )

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if other.is_rational:
                other = other.constant
            elif self.is_rational:
                return other * self.constant
            else:
                raise TypeError("product of two irrational scalars is not modelled")
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        q = Fraction(other)
        if q == 0:
            return ZERO
        return Scalar(
            self.constant * q,
            tuple((n, c * q) for n, c in self.coefficients),
            self.table,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar) and other.is_rational:
            other = other.constant
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    # ---- equality and ordering ----

    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.constant == other.constant
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.constant, self.coefficients))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar()
ONE = Scalar(Fraction(1))


def as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Scalar(Fraction(value))
    return NotImplemented


def _build(constant: Fraction, coefficients: Dict[str, Fraction], table) -> Scalar:
    items = [(n, q) for n, q in coefficients.items() if q != 0]
    if items:
        items.sort(key=lambda item: table.index(item[0]))
    return Scalar(constant, tuple(items), table if items else None)


def _combine(a: Scalar, b: Scalar, sign: int) -> Scalar:
    if not b.coefficients:
        return Scalar(a.constant + sign * b.constant, a.coefficients, a.table)
    table = merge_tables(a.table, b.table)
    merged = dict(a.coefficients)
    for n, q in b.coefficients:
        merged[n] = merged.get(n, 0) + sign * q
    return _build(a.constant + sign * b.constant, merged, table)


# ---- witness evaluation ----


def enclosure(a: Scalar, digits: int) -> Tuple[Fraction, Fraction]:
    lo = hi = a.constant
    for name, q in a.coefficients:
        slo, shi = a.table.symbol(name).enclosure(digits)
        if q > 0:
            lo += q * slo
            hi += q * shi
        else:
            lo += q * shi
            hi += q * slo
    return lo, hi


def _digit_schedule(a: Scalar):
    top = max(a.table.symbol(n).precision for n, _ in a.coefficients)
    digits = min(_FIRST_DIGITS, top)
    while True:
        yield digits, digits >= top
        digits = min(2 * digits, top)


def sign(a: Scalar) -> int:
    if a.is_rational:
        return (a.constant > 0) - (a.constant < 0)
    for digits, last in _digit_schedule(a):
        lo, hi = enclosure(a, digits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if last:
            raise InsufficientPrecision(
                f"witnesses cannot decide the sign of {format_scalar(a)}"
            )


def compare(a, b) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a, b = as_scalar(a), as_scalar(b)
    if a == b:
        return 0
    return sign(a - b)


def floor(a: Scalar) -> int:
    if a.is_rational:
        return math.floor(a.constant)
    for digits, last in _digit_schedule(a):
        lo, hi = enclosure(a, digits)
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        if last:
            raise InsufficientPrecision(
                f"witnesses cannot decide the integer part of {format_scalar(a)}"
            )


def approximate(a: Scalar, digits: int = 20) -> Fraction:
    """Midpoint of the witness enclosure; for display and gap searches only."""
    lo, hi = enclosure(a, digits)
    return (lo + hi) / 2


@dataclass(frozen=True)
class CircleValue:
    """A point of the circle of length ``modulus``, stored in ``[0, modulus)``."""

    modulus: Fraction
    representative: Scalar

    def __add__(self, other: "CircleValue") -> "CircleValue":
        _same_circle(self, other)
        total = self.representative + other.representative
        if compare(total, self.modulus) >= 0:
            total = total - self.modulus
        return CircleValue(self.modulus, total)

    def __neg__(self) -> "CircleValue":
        if self.representative == ZERO:
            return self
        return CircleValue(self.modulus, self.modulus - self.representative)

    def __sub__(self, other: "CircleValue") -> "CircleValue":
        return self + (-other)

    def scale(self, k: int) -> "CircleValue":
        return reduce_mod(self.representative * k, self.modulus)

    def shift(self, a) -> "CircleValue":
        return reduce_mod(self.representative + a, self.modulus)

    @property
    def is_zero(self) -> bool:
        return self.representative == ZERO

    def __str__(self):
        return format_scalar(self.representative)


def _same_circle(a: CircleValue, b: CircleValue):
    if a.modulus != b.modulus:
        raise ValueError(f"circles of length {a.modulus} and {b.modulus} differ")


def reduce_mod(a, modulus: Rationalish) -> CircleValue:
    modulus = Fraction(modulus)
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    a = as_scalar(a)
    k = floor(a / modulus)
    r = a - modulus * k
    if sign(r) < 0 or compare(r, modulus) >= 0:
        raise InsufficientPrecision(f"could not reduce {format_scalar(a)} mod {modulus}")
    return CircleValue(modulus, r)


def q_rank(values: Iterable[Scalar], include_one: bool = True) -> int:
    """Dimension over Q of the span of ``values`` (and of 1 unless told otherwise)."""
    values = [as_scalar(v) for v in values]
    names = []
    for v in values:
        for n, _ in v.coefficients:
            if n not in names:
                names.append(n)
    rows = [[v.constant] + [v.coefficient(n) for n in names] for v in values]
    if include_one:
        rows.append([Fraction(1)] + [Fraction(0)] * len(names))
    if not rows:
        return 0
    return Matrix(
        [[Rational(q.numerator, q.denominator) for q in row] for row in rows]
    ).rank()


def ratio_is_rational(a: Scalar, b: Scalar) -> bool:
    """Whether ``a / b`` is rational, ``b`` nonzero."""
    return q_rank([a, b], include_one=False) <= 1


# ---- text grammar ----

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/]))"
)


def _tokens(text: str, line: int, offset: int):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, offset + pos + 1)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), offset + start + 1))
        pos = m.end()
    return out


def parse_scalar(
    text: str, table: Optional[SymbolTable] = None, line: int = 1, offset: int = 0
) -> Scalar:
    table = table or SymbolTable()
    tokens = _tokens(text, line, offset)
    end_column = offset + len(text) + 1
    position = 0

    def peek():
        return tokens[position] if position < len(tokens) else (None, None, end_column)

    def take(kind, value=None):
        nonlocal position
        tok = peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            wanted = value or kind
            raise ParseError(f"expected {wanted}, found {tok[1] or 'end of input'}", line, tok[2])
        position += 1
        return tok

    def term() -> Scalar:
        kind, value, column = peek()
        if kind == "ident":
            take("ident")
            return _symbol(value, column)
        if kind != "num":
            raise ParseError(f"expected a term, found {value or 'end of input'}", line, column)
        take("num")
        q = Fraction(int(value))
        if peek()[:2] == ("op", "/"):
            take("op", "/")
            _, den, den_column = take("num")
            if int(den) == 0:
                raise ParseError("zero denominator", line, den_column)
            q = Fraction(int(value), int(den))
        if peek()[:2] == ("op", "*"):
            take("op", "*")
            _, name, name_column = take("ident")
            return _symbol(name, name_column) * q
        return Scalar(q)

    def _symbol(name, column):
        if name not in table:
            raise ParseError(f"undeclared symbol {name!r}", line, column)
        return Scalar.symbol(table, name)

    if not tokens:
        raise ParseError("empty scalar", line, end_column)
    negate = False
    if peek()[:2] in (("op", "-"), ("op", "+")):
        negate = take("op")[1] == "-"
    total = term()
    if negate:
        total = -total
    while position < len(tokens):
        _, op, column = take("op")
        if op not in "+-":
            raise ParseError(f"expected + or -, found {op}", line, column)
        total = total + term() if op == "+" else total - term()
    return total


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(a: Scalar) -> str:
    parts = []
    if a.constant != 0 or not a.coefficients:
        parts.append(format_rational(a.constant))
    for name, q in a.coefficients:
        magnitude = abs(q)
        term = name if magnitude == 1 else f"{format_rational(magnitude)}*{name}"
        if not parts:
            parts.append(term if q > 0 else "-" + term)
        else:
            parts.append(("+ " if q > 0 else "- ") + term)
    return " ".join(parts)


def scalars(values: Sequence, table: Optional[SymbolTable] = None):
    """Coerce strings, ints and Fractions into Scalars over ``table``."""
    out = []
    for v in values:
        out.append(parse_scalar(v, table) if isinstance(v, str) else as_scalar(v))
    return tuple(out)
