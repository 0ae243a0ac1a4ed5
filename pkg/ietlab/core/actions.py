"""
Finitely presented group actions by IETs.

A word is a tuple of ``(generator, exponent)`` pairs, read like a composition:
``(("b", 1), ("a", 1))`` is ``b o a``, so ``a`` acts first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import config
from ietlab.core import gn
from ietlab.core.gn import GnElement, from_iet, strengthen_reverser, to_iet
from ietlab.core.iet import (
    Iet,
    NotFoundWithinBudget,
    compose,
    detect_restricted_rotation_product,
    inverse,
    is_reversed_by,
    period,
    power,
)
from ietlab.core.intervals import IntervalSet
from ietlab.core.perm import Permutation
from ietlab.core.pl import PlMap, conjugate_by_pl, normalize_pieces
from ietlab.core.scalar import (
    Scalar,
    SymbolTable,
    q_rank,
    ratio_is_rational,
)
from ietlab.logging import LOGGER
from ietlab.utils.exceptions import (
    FreenessUnverified,
    InternalVerificationFailed,
    NotAReverser,
    RelationNotSatisfied,
    UnboundGenerator,
    UnresolvedComponent,
    UsageError,
)

log = LOGGER(__name__)

Word = Tuple[Tuple[str, int], ...]

BS_RELATION: Word = (("b", 1), ("a", 1), ("b", -1), ("a", 1))


@dataclass(frozen=True)
class MarkedAction:
    generators: Mapping[str, Iet]
    relations: Tuple[Word, ...] = ()
    gn: Mapping[str, GnElement] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        generators: Mapping[str, Iet],
        relations: Sequence[Word] = (),
        gn: Optional[Mapping[str, GnElement]] = None,
        checked: bool = False,
    ) -> "MarkedAction":
        action = cls(dict(generators), tuple(tuple(w) for w in relations), dict(gn or {}))
        if checked:
            failing = [w for w, ok in zip(action.relations, check_relations(action)) if not ok]
            if failing:
                raise RelationNotSatisfied(f"{len(failing)} relation(s) fail, first {failing[0]}")
        return action

    @classmethod
    def from_gn(cls, generators: Mapping[str, GnElement], relations: Sequence[Word] = (), checked=False):
        return cls.build({k: to_iet(g) for k, g in generators.items()}, relations, generators, checked)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.generators)

    def generator(self, name: str) -> Iet:
        try:
            return self.generators[name]
        except KeyError:
            raise UnboundGenerator(f"generator {name!r} is not bound")


def eval_word(action: MarkedAction, word: Sequence[Tuple[str, int]]) -> Iet:
    out = Iet.identity()
    for name, exponent in word:
        out = compose(out, power(action.generator(name), exponent))
    return out


def check_relations(action: MarkedAction) -> List[bool]:
    return [eval_word(action, w).is_identity for w in action.relations]


def commutator_is_trivial(action: MarkedAction, u: Word, v: Word) -> bool:
    """Whether u o v o u^-1 o v^-1 is the identity."""
    x, y = eval_word(action, u), eval_word(action, v)
    return compose(compose(x, y), compose(inverse(x), inverse(y))).is_identity


# ---- faithfulness ----


@dataclass(frozen=True)
class Faithful:
    pass


@dataclass(frozen=True)
class NotFaithful:
    witness: Word


@dataclass(frozen=True)
class Unknown:
    reason: str


def _order(action: MarkedAction, name: str, budget: int) -> Union[int, None, NotFoundWithinBudget]:
    """Exact order when a G_n form is known (None for infinite), else a budgeted period."""
    if name in action.gn:
        k = gn.order(action.gn[name])
        return None if k is gn.INFINITE else k
    return period(action.generator(name), budget)


def bs_faithfulness(action: MarkedAction, budget: Optional[int] = None):
    """An action of <a, b | b a b^-1 = a^-1> is faithful iff a and b have infinite order."""
    budget = budget or config.BUDGET
    if not eval_word(action, BS_RELATION).is_identity:
        raise RelationNotSatisfied("b a b^-1 = a^-1 does not hold")
    unknown = []
    for name in ("a", "b"):
        k = _order(action, name, budget)
        if isinstance(k, int):
            return NotFaithful(((name, k),))
        if isinstance(k, NotFoundWithinBudget):
            unknown.append(name)
    if unknown:
        return Unknown(f"no period of {' and '.join(unknown)} found within budget {budget}")
    return Faithful()


# ---- freeness ----


@dataclass(frozen=True)
class NoFixedPointFound:
    words_checked: int


@dataclass(frozen=True)
class FixedPoint:
    word: Word
    point: Scalar


def is_bs_action(action: MarkedAction) -> bool:
    return set(action.names) == {"a", "b"} and eval_word(action, BS_RELATION).is_identity


def bs_normal_forms(bound: int) -> Iterator[Word]:
    """a^p b^q with max(|p|, |q|) <= bound, nontrivial, shortest first."""
    pairs = [
        (p, q)
        for p in range(-bound, bound + 1)
        for q in range(-bound, bound + 1)
        if (p, q) != (0, 0)
    ]
    pairs.sort(key=lambda pq: (max(abs(pq[0]), abs(pq[1])), abs(pq[0]), abs(pq[1]), pq[0] < 0, pq[1] < 0))
    for p, q in pairs:
        yield tuple(w for w in (("a", p), ("b", q)) if w[1] != 0)


def reduced_words(names: Sequence[str], bound: int) -> Iterator[Word]:
    """Freely reduced words of length 1..bound, as runs of generator powers."""
    letters = [(n, e) for n in names for e in (1, -1)]
    for length in range(1, bound + 1):
        for letters_word in itertools.product(letters, repeat=length):
            if any(x[0] == y[0] and x[1] == -y[1] for x, y in zip(letters_word, letters_word[1:])):
                continue
            runs = []
            for name, e in letters_word:
                if runs and runs[-1][0] == name:
                    runs[-1] = (name, runs[-1][1] + e)
                else:
                    runs.append((name, e))
            yield tuple(runs)


def bounded_freeness(
    action: MarkedAction,
    word_bound: Optional[int] = None,
    sample_points: Sequence[Scalar] = (),
):
    """Search nontrivial words up to ``word_bound`` for a fixed point, exactly.

    For BS(1,-1) actions the normal forms a^p b^q are used; otherwise freely
    reduced words, skipping those that act as the identity.
    """
    word_bound = word_bound or config.FREENESS_WORD_BOUND
    bs = is_bs_action(action)
    words = bs_normal_forms(word_bound) if bs else reduced_words(action.names, word_bound)
    checked = 0
    for word in words:
        g = eval_word(action, word)
        if not bs and g.is_identity:
            continue
        checked += 1
        fixed = g.fixed_points()
        if fixed.is_empty:
            continue
        point = next((x for x in sample_points if fixed.contains(x)), fixed.left)
        log.debug(f"word {word} fixes {point}")
        return FixedPoint(word, point)
    return NoFixedPointFound(checked)


# ---- minimality ----


@dataclass(frozen=True)
class MinimalityCertificate:
    transitive: bool
    stabilizer_generators: Tuple[Word, ...]
    angles: Tuple[Scalar, ...]
    angle_rank: int

    @property
    def valid(self) -> bool:
        return self.transitive and self.angle_rank >= 2


@dataclass(frozen=True)
class NotMinimalEvidence:
    reason: str
    invariant: Optional[IntervalSet] = None


def _gn_forms(action: MarkedAction, n: Optional[int]) -> Dict[str, GnElement]:
    if all(name in action.gn for name in action.names):
        return dict(action.gn)
    if n is None:
        raise UsageError("the block count n is needed to read generators as elements of G_n")
    return {name: from_iet(g, n) for name, g in action.generators.items()}


def _word_inverse(word: Word) -> Word:
    return tuple((name, -e) for name, e in reversed(word))


def minimality_certificate(action: MarkedAction, n: Optional[int] = None):
    """Transitivity on blocks plus a dense angle group of the stabilizer of block 1."""
    forms = _gn_forms(action, n)
    n = next(iter(forms.values())).n
    transversal: Dict[int, Word] = {1: ()}
    queue = [1]
    while queue:
        j = queue.pop(0)
        for name, g in forms.items():
            for e in (1, -1):
                k = g.sigma(j) if e > 0 else g.sigma.inverse()(j)
                if k not in transversal:
                    transversal[k] = ((name, e),) + transversal[j]
                    queue.append(k)
    if len(transversal) < n:
        blocks = sorted(transversal)
        invariant = IntervalSet.of((Fraction(j - 1, n), Fraction(j, n)) for j in blocks)
        return NotMinimalEvidence(f"blocks {blocks} form an invariant set", invariant)

    def element(word: Word) -> GnElement:
        out = GnElement.identity(n)
        for name, e in word:
            out = gn.compose(out, gn.power(forms[name], e))
        return out

    generators, angles = [], []
    for j, t in sorted(transversal.items()):
        for name, g in forms.items():
            word = _word_inverse(transversal[g.sigma(j)]) + ((name, 1),) + t
            s = element(word)
            if s.sigma(1) != 1:
                raise InternalVerificationFailed(f"Schreier generator {word} moves block 1")
            if s.angle(1).is_zero:
                continue
            generators.append(word)
            angles.append(s.angle(1).representative)
    rank = q_rank(angles)
    certificate = MinimalityCertificate(True, tuple(generators), tuple(angles), rank)
    if not certificate.valid:
        return NotMinimalEvidence("the stabilizer angles are rational: every orbit is finite")
    return certificate


# ---- normalization ----


@dataclass(frozen=True)
class NormalizedAction:
    R: PlMap
    E: Iet
    F: GnElement
    H: GnElement
    power: int


def _irrational_rotation_power(f: Iet, limit: int):
    g = Iet.identity()
    for p in range(1, limit + 1):
        g = compose(f, g)
        pieces = detect_restricted_rotation_product(g)
        if isinstance(pieces, list) and all(
            not ratio_is_rational(piece.angle, piece.length) for piece in pieces
        ):
            return p, g, pieces
    return None


def normalize_free_bs_action(f: Iet, h: Iet, budget: Optional[int] = None) -> NormalizedAction:
    """Conjugate a free BS(1,-1) action into G_n by a PL map R (with E the identity)."""
    if not is_reversed_by(f, h):
        raise NotAReverser("h o f o h^-1 is not f^-1")
    action = MarkedAction.build({"a": f, "b": h}, [BS_RELATION])
    verdict = bounded_freeness(action, config.FREENESS_WORD_BOUND)
    if isinstance(verdict, FixedPoint):
        raise FreenessUnverified(f"word {verdict.word} fixes {verdict.point}")
    found = _irrational_rotation_power(f, config.NORMALIZE_POWER_LIMIT)
    if found is None:
        raise UnresolvedComponent(
            f"no power f^p with p <= {config.NORMALIZE_POWER_LIMIT} is a product of "
            "irrational restricted rotations"
        )
    p, fp, pieces = found
    R, _ = normalize_pieces(fp, pieces)
    n = len(pieces)
    F = from_iet(conjugate_by_pl(f, R), n)
    H = from_iet(conjugate_by_pl(h, R), n)
    if not gn.is_reversed_by(F, H):
        raise InternalVerificationFailed("the relation is lost after conjugation")
    strengthen_reverser(F, H)
    log.info(f"normalized a free BS(1,-1) action into G_{n} through f^{p}")
    return NormalizedAction(R, Iet.identity(), F, H, p)


# ---- builtin examples ----


def example_table() -> SymbolTable:
    return (
        SymbolTable()
        .register("alpha", config.ALPHA_WITNESS)
        .register("beta", config.BETA_WITNESS)
    )


def builtin_examples(table: Optional[SymbolTable] = None) -> Dict[str, MarkedAction]:
    table = table or example_table()
    alpha, beta = Scalar.symbol(table, "alpha"), Scalar.symbol(table, "beta")

    def element(angles, cycles):
        return GnElement.make(angles, Permutation.from_cycles(4, cycles))

    a_flat = element([-alpha, alpha, -alpha, alpha], [])
    return {
        "bs11_flat": MarkedAction.from_gn(
            {"a": a_flat, "b": element([0, beta, 0, -beta], [(1, 4), (2, 3)])},
            [BS_RELATION],
        ),
        "bs11_minimal": MarkedAction.from_gn(
            {"a": a_flat, "b": element([beta, beta, beta, beta], [(1, 2, 3, 4)])},
            [BS_RELATION],
        ),
        "c1": MarkedAction.from_gn(
            {
                "a": element([0, alpha, -alpha, 0], [(1, 3), (2, 4)]),
                "b": element([beta, 0, -beta, 0], [(1, 4), (2, 3)]),
            },
            [
                (("b", 1), ("a", 2), ("b", -1), ("a", 2)),
                (("a", 1), ("b", 2), ("a", -1), ("b", 2)),
            ],
        ),
    }
