"""
The SAF invariant: the sum over the exchanged intervals of length (x) translation,
taken in R (x)_Q R over the basis (1, s_1, ..., s_m) of the symbol table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from ietlab.core.iet import Iet
from ietlab.core.scalar import Scalar, SymbolTable, as_scalar, format_rational, merge_tables
from ietlab.utils.exceptions import NotAntisymmetric

Entry = Tuple[int, int, Fraction]


@dataclass(frozen=True)
class SafTensor:
    """Sparse rational matrix over ``basis``; entry (i, j) is the coefficient of e_i (x) e_j."""

    basis: Tuple[str, ...]
    entries: Tuple[Entry, ...] = ()

    @classmethod
    def zero(cls, table: Optional[SymbolTable] = None) -> "SafTensor":
        return cls(_basis(table))

    @property
    def basis_size(self) -> int:
        return len(self.basis)

    def as_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, j): q for i, j, q in self.entries}

    def __add__(self, other: "SafTensor") -> "SafTensor":
        basis = _wider(self.basis, other.basis)
        total = self.as_dict()
        for i, j, q in other.entries:
            total[i, j] = total.get((i, j), Fraction(0)) + q
        return _canonical(basis, total)

    def __neg__(self) -> "SafTensor":
        return SafTensor(self.basis, tuple((i, j, -q) for i, j, q in self.entries))

    def __sub__(self, other: "SafTensor") -> "SafTensor":
        return self + (-other)

    def scale(self, q) -> "SafTensor":
        return _canonical(self.basis, {(i, j): c * Fraction(q) for i, j, c in self.entries})

    def __eq__(self, other):
        if not isinstance(other, SafTensor):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return format_wedge(self)


def _basis(table: Optional[SymbolTable]) -> Tuple[str, ...]:
    return ("1",) + (table.names if table is not None else ())


def _wider(a: Tuple[str, ...], b: Tuple[str, ...]) -> Tuple[str, ...]:
    if a[: len(b)] == b:
        return a
    if b[: len(a)] == a:
        return b
    raise ValueError("tensors over unrelated bases")


def _canonical(basis, entries: Dict[Tuple[int, int], Fraction]) -> SafTensor:
    return SafTensor(basis, tuple(sorted((i, j, q) for (i, j), q in entries.items() if q != 0)))


def _table_of(values: Iterable[Scalar]) -> Optional[SymbolTable]:
    table = None
    for v in values:
        table = merge_tables(table, v.table)
    return table


def _vector(a: Scalar, basis: Tuple[str, ...]) -> List[Fraction]:
    return [a.constant] + [a.coefficient(name) for name in basis[1:]]


def tensor(u, v) -> SafTensor:
    u, v = as_scalar(u), as_scalar(v)
    basis = _basis(_table_of((u, v)))
    x, y = _vector(u, basis), _vector(v, basis)
    return _canonical(
        basis,
        {(i, j): x[i] * y[j] for i in range(len(basis)) for j in range(len(basis)) if x[i] and y[j]},
    )


def wedge(u, v) -> SafTensor:
    """u ^ v = u (x) v - v (x) u."""
    return tensor(u, v) - tensor(v, u)


def saf(f: Iet) -> SafTensor:
    table = _table_of(list(f.breakpoints) + list(f.translations))
    out = SafTensor.zero(table)
    for a, b, t in f.pieces():
        out = out + tensor(b - a, t)
    return out


def is_zero(t: SafTensor) -> bool:
    return not t.entries


def wedge_normal_form(t: SafTensor) -> SafTensor:
    """Coefficients of e_i ^ e_j for i < j; requires the symmetric part to vanish."""
    values = t.as_dict()
    for (i, j), q in values.items():
        if q + values.get((j, i), Fraction(0)) != 0:
            raise NotAntisymmetric(
                f"entries ({t.basis[i]}, {t.basis[j]}) and ({t.basis[j]}, {t.basis[i]}) "
                f"do not cancel"
            )
    return _canonical(t.basis, {(i, j): q for (i, j), q in values.items() if i < j})


def format_wedge(t: SafTensor) -> str:
    """Human form: sum of q (e_i ^ e_j) over the wedge normal form."""
    if is_zero(t):
        return "0"
    try:
        form = wedge_normal_form(t)
        symbol = "∧"
    except NotAntisymmetric:
        form, symbol = t, "⊗"
    parts = []
    for i, j, q in form.entries:
        term = f"({form.basis[i]} {symbol} {form.basis[j]})"
        magnitude = abs(q)
        coefficient = "" if magnitude == 1 else format_rational(magnitude) + " "
        if not parts:
            parts.append(("-" if q < 0 else "") + coefficient + term)
        else:
            parts.append(("- " if q < 0 else "+ ") + coefficient + term)
    return " ".join(parts)


def machine_form(t: SafTensor) -> List[Entry]:
    return list(wedge_normal_form(t).entries)


def rr_saf_vanishes(l1, delta1, delta2) -> bool:
    """SAF-zero test for the two restricted rotations by delta1 on [0, l1) and delta2 on [l1, 1)."""
    f = Iet.restricted_rotations([(0, l1, delta1), (l1, 1, delta2)])
    return is_zero(saf(f))


def _calibrate() -> int:
    """Sign of the 1 ^ s coefficient of the SAF of the rotation by a symbol s."""
    table = SymbolTable().register("s", "0.41421356237309504880", 20)
    rotation = Iet.rotation(Scalar.symbol(table, "s"))
    ((_, _, q),) = wedge_normal_form(saf(rotation)).entries
    return 1 if q > 0 else -1


# saf(R_s) = SAF_SIGN * (1 ^ s)
SAF_SIGN = _calibrate()
