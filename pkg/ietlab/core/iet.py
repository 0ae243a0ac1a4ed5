"""
Interval exchange transformations of [0, 1).

An :class:`Iet` is stored canonically: strictly increasing breakpoints starting
at 0 and one translation per interval, with no two adjacent intervals sharing a
translation. All endpoints and translations are exact Scalars.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

from sympy import primefactors

import config
from ietlab.core.intervals import IntervalSet
from ietlab.core.perm import Permutation
from ietlab.core.scalar import (
    ONE,
    ZERO,
    Scalar,
    as_scalar,
    compare,
    format_scalar,
    reduce_mod,
    sign,
)
from ietlab.logging import LOGGER
from ietlab.utils.exceptions import (
    BudgetExhausted,
    InternalVerificationFailed,
    InvalidIet,
    NotAReverser,
    OutOfDomain,
)

log = LOGGER(__name__)

Piece = Tuple[Scalar, Scalar, Scalar]


@dataclass(frozen=True)
class NotFoundWithinBudget:
    budget: int

    def __str__(self):
        return f"not found within budget {self.budget}"


@dataclass(frozen=True)
class Iet:
    breakpoints: Tuple[Scalar, ...]
    translations: Tuple[Scalar, ...]

    # ---- construction ----

    @classmethod
    def from_pieces(cls, breakpoints: Sequence, translations: Sequence) -> "Iet":
        """Validated constructor: sorted breakpoints from 0, images tiling [0, 1)."""
        bps = tuple(as_scalar(b) for b in breakpoints)
        trs = tuple(as_scalar(t) for t in translations)
        if not bps or len(bps) != len(trs):
            raise InvalidIet("need as many translations as intervals")
        if bps[0] != ZERO:
            raise InvalidIet("the first breakpoint must be 0")
        for a, b in zip(bps, bps[1:] + (ONE,)):
            if compare(a, b) >= 0:
                raise InvalidIet(f"breakpoints must increase strictly below 1 (at {a})")
        images = sorted(
            ((a + t, b + t) for a, b, t in zip(bps, bps[1:] + (ONE,), trs)),
            key=lambda ab: ab[0],
        )
        cursor = ZERO
        for lo, hi in images:
            if lo != cursor:
                raise InvalidIet(f"images do not tile [0, 1): gap or overlap at {cursor}")
            cursor = hi
        if cursor != ONE:
            raise InvalidIet("images do not tile [0, 1)")
        return cls.build(bps, trs)

    @classmethod
    def build(cls, breakpoints: Sequence[Scalar], translations: Sequence[Scalar]) -> "Iet":
        """Canonical form of data already known to define an IET."""
        bps, trs = [breakpoints[0]], [translations[0]]
        for b, t in zip(breakpoints[1:], translations[1:]):
            if t == trs[-1]:
                continue
            bps.append(b)
            trs.append(t)
        return cls(tuple(bps), tuple(trs))

    @classmethod
    def identity(cls) -> "Iet":
        return cls((ZERO,), (ZERO,))

    @classmethod
    def from_lengths(cls, lengths: Sequence, permutation: Permutation) -> "Iet":
        """Interval k of length lengths[k] is placed at position permutation(k)."""
        lengths = [as_scalar(x) for x in lengths]
        if len(lengths) != permutation.n:
            raise InvalidIet(f"{len(lengths)} lengths for a permutation of {permutation.n}")
        if any(sign(x) <= 0 for x in lengths):
            raise InvalidIet("lengths must be positive")
        if sum(lengths, ZERO) != ONE:
            raise InvalidIet("lengths must add up to 1")
        bps, trs, left = [], [], ZERO
        for k, length in enumerate(lengths, start=1):
            before = sum(
                (lengths[j - 1] for j in range(1, permutation.n + 1)
                 if permutation(j) < permutation(k)),
                ZERO,
            )
            bps.append(left)
            trs.append(before - left)
            left = left + length
        return cls.from_pieces(bps, trs)

    @classmethod
    def rotation(cls, angle) -> "Iet":
        a = reduce_mod(as_scalar(angle), 1).representative
        if a == ZERO:
            return cls.identity()
        return cls.build((ZERO, ONE - a), (a, a - ONE))

    @classmethod
    def restricted_rotations(cls, pieces: Sequence[Tuple]) -> "Iet":
        """Product of rotations by angle on [lo, hi), identity elsewhere."""
        bps, trs, cursor = [], [], ZERO
        for lo, hi, angle in sorted(
            ((as_scalar(a), as_scalar(b), as_scalar(c)) for a, b, c in pieces),
            key=lambda p: p[0],
        ):
            if compare(lo, cursor) < 0:
                raise InvalidIet("restricted rotation supports overlap")
            if compare(lo, cursor) > 0:
                bps.append(cursor)
                trs.append(ZERO)
            length = hi - lo
            if length.is_rational:
                angle = reduce_mod(angle, length.constant).representative
            elif sign(angle) < 0 or compare(angle, length) >= 0:
                raise InvalidIet(f"angle {angle} outside [0, {length})")
            bps.append(lo)
            if angle == ZERO:
                trs.append(ZERO)
            else:
                trs.append(angle)
                bps.append(hi - angle)
                trs.append(angle - length)
            cursor = hi
        if compare(cursor, ONE) < 0:
            bps.append(cursor)
            trs.append(ZERO)
        return cls.from_pieces(bps, trs)

    # ---- inspection ----

    @property
    def size(self) -> int:
        return len(self.breakpoints)

    def pieces(self) -> List[Piece]:
        rights = self.breakpoints[1:] + (ONE,)
        return list(zip(self.breakpoints, rights, self.translations))

    def lengths(self) -> List[Scalar]:
        return [b - a for a, b, _ in self.pieces()]

    def permutation(self) -> Permutation:
        """Position of each interval in the image, as a permutation."""
        order = sorted(range(self.size), key=lambda k: self.breakpoints[k] + self.translations[k])
        images = [0] * self.size
        for position, k in enumerate(order, start=1):
            images[k] = position
        return Permutation(tuple(images))

    def locate(self, x: Scalar) -> int:
        return bisect.bisect_right(self.breakpoints, x) - 1

    def translation_at(self, x: Scalar) -> Scalar:
        return self.translations[self.locate(x)]

    def evaluate(self, x) -> Scalar:
        x = as_scalar(x)
        if sign(x) < 0 or compare(x, ONE) >= 0:
            raise OutOfDomain(f"{x} is outside [0, 1)")
        return x + self.translation_at(x)

    __call__ = evaluate

    @property
    def is_identity(self) -> bool:
        return self.translations == (ZERO,)

    def __mul__(self, other: "Iet") -> "Iet":
        return compose(self, other)

    def inverse(self) -> "Iet":
        return inverse(self)

    def fixed_points(self) -> IntervalSet:
        return IntervalSet.of((a, b) for a, b, t in self.pieces() if t == ZERO)

    def is_identity_on(self, support: IntervalSet) -> bool:
        return self.fixed_points().intersection(support) == support

    def image(self, support: IntervalSet) -> IntervalSet:
        out = []
        for lo, hi in support:
            for a, b, t in split(self.pieces(), lo, hi):
                out.append((a + t, b + t))
        return IntervalSet.of(out)

    def first_difference(self, other: "Iet") -> Optional[Tuple[Scalar, Scalar]]:
        """First interval of the common refinement on which the translations differ."""
        cuts = sorted(set(self.breakpoints) | set(other.breakpoints))
        for a, b in zip(cuts, cuts[1:] + [ONE]):
            if self.translation_at(a) != other.translation_at(a):
                return a, b
        return None

    def __str__(self):
        return "iet breakpoints= {} translations= {}".format(
            ", ".join(format_scalar(b) for b in self.breakpoints),
            ", ".join(format_scalar(t) for t in self.translations),
        )


def split(pieces: Sequence[Piece], lo: Scalar, hi: Scalar) -> List[Piece]:
    """Pieces of a piecewise translation clipped to [lo, hi)."""
    lefts = [p[0] for p in pieces]
    k = max(bisect.bisect_right(lefts, lo) - 1, 0)
    out = []
    while k < len(pieces) and compare(pieces[k][0], hi) < 0:
        a, b, t = pieces[k]
        a = a if compare(a, lo) >= 0 else lo
        b = b if compare(b, hi) <= 0 else hi
        if compare(a, b) < 0:
            out.append((a, b, t))
        k += 1
    return out


def compose(f: Iet, g: Iet) -> Iet:
    """f o g, on the cuts BP(g) together with g^-1(BP(f))."""
    back = inverse(g)
    cuts = set(g.breakpoints)
    cuts.update(back.evaluate(b) for b in f.breakpoints)
    cuts = sorted(cuts)
    translations = []
    for c in cuts:
        t = g.translation_at(c)
        translations.append(t + f.translation_at(c + t))
    return Iet.build(cuts, translations)


def inverse(f: Iet) -> Iet:
    images = sorted(((a + t, -t) for a, _, t in f.pieces()), key=lambda p: p[0])
    return Iet.build([p[0] for p in images], [p[1] for p in images])


def power(f: Iet, k: int) -> Iet:
    base = f if k >= 0 else inverse(f)
    result = Iet.identity()
    k = abs(k)
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def equals(f: Iet, g: Iet) -> bool:
    return f == g


def is_reversed_by(f: Iet, h: Iet) -> bool:
    return compose(h, compose(f, inverse(h))) == inverse(f)


def reverser_family(f: Iet, h: Iet, s: int) -> Iet:
    """h o f^s, which reverses f whenever h does."""
    if not is_reversed_by(f, h):
        raise NotAReverser("h o f o h^-1 is not f^-1")
    out = compose(h, power(f, s))
    if not is_reversed_by(f, out):
        raise InternalVerificationFailed("h o f^s failed to reverse f")
    return out


def orbit(f: Iet, x: Scalar, budget: int) -> Optional[List[Scalar]]:
    """The periodic orbit of x, or None when it does not close within budget."""
    points = [x]
    y = f.evaluate(x)
    while y != x:
        if len(points) >= budget:
            return None
        points.append(y)
        y = f.evaluate(y)
    return points


def period(f: Iet, budget: Optional[int] = None) -> Union[int, NotFoundWithinBudget]:
    """Least p <= budget with f^p = id.

    Every point shares the period of the left end of its cell in the partition
    cut by the breakpoint orbits, so the lcm of the breakpoint orbit lengths is
    the candidate; it is verified and then refined over its prime divisors.
    """
    budget = budget or config.BUDGET
    lengths = []
    for b in f.breakpoints:
        points = orbit(f, b, budget)
        if points is None:
            return NotFoundWithinBudget(budget)
        lengths.append(len(points))
    p = reduce(math.lcm, lengths, 1)
    if p > budget:
        return NotFoundWithinBudget(budget)
    if not power(f, p).is_identity:
        raise InternalVerificationFailed(f"f^{p} is not the identity")
    for q in primefactors(p):
        while p % q == 0 and power(f, p // q).is_identity:
            p //= q
    return p


@dataclass(frozen=True)
class BpGrowth:
    counts: Tuple[int, ...]
    estimate: Fraction


def bp_growth(f: Iet, x, n_max: int) -> BpGrowth:
    """#(BP(f^n) within the orbit segment of x of radius n_max), n = 1..n_max.

    The estimate is the last count over n_max, a finite-range proxy for the
    asymptotic growth rate, not the rate itself.
    """
    x = as_scalar(x)
    segment = {x}
    forward, backward, back = x, x, inverse(f)
    for _ in range(n_max):
        forward = f.evaluate(forward)
        backward = back.evaluate(backward)
        segment.update((forward, backward))
    counts = []
    g = Iet.identity()
    for _ in range(n_max):
        g = compose(f, g)
        counts.append(sum(1 for b in g.breakpoints if b in segment))
    return BpGrowth(tuple(counts), Fraction(counts[-1], n_max) if counts else Fraction(0))


# ---- induced maps ----


@dataclass(frozen=True)
class InducedMap:
    """First-return map of a piecewise translation on [lo, hi)."""

    lo: Scalar
    hi: Scalar
    induced: Tuple[Piece, ...]
    floors: IntervalSet
    steps: int

    def pieces(self) -> List[Piece]:
        return list(self.induced)

    def lengths(self) -> List[Scalar]:
        return [b - a for a, b, _ in self.induced]

    def permutation(self) -> Permutation:
        order = sorted(range(len(self.induced)), key=lambda k: self.induced[k][0] + self.induced[k][2])
        images = [0] * len(self.induced)
        for position, k in enumerate(order, start=1):
            images[k] = position
        return Permutation(tuple(images))

    def restricted_to(self, count: int) -> "InducedMap":
        """The first ``count`` intervals, assumed to form an invariant block."""
        head = self.induced[:count]
        return InducedMap(self.lo, head[-1][1], head, self.floors, self.steps)


def _cut(lo, hi, a, b):
    """Split [a, b) into (start, end, inside [lo, hi)) parts."""
    parts = []
    if compare(a, lo) < 0:
        parts.append((a, b if compare(b, lo) <= 0 else lo, False))
    inner_a = a if compare(a, lo) >= 0 else lo
    inner_b = b if compare(b, hi) <= 0 else hi
    if compare(inner_a, inner_b) < 0:
        parts.append((inner_a, inner_b, True))
    if compare(b, hi) > 0:
        parts.append((a if compare(a, hi) >= 0 else hi, b, False))
    return parts


def first_return(f, lo, hi, budget: Optional[int] = None) -> InducedMap:
    """Exact first-return map of ``f`` (an Iet or an InducedMap) on [lo, hi).

    Raises BudgetExhausted after ``budget`` elementary steps.
    """
    budget = budget or config.BUDGET
    lo, hi = as_scalar(lo), as_scalar(hi)
    pieces = f.pieces()
    done, floors = [], []
    work = [(lo, hi, ZERO)]
    steps = 0
    while work:
        a, b, shift = work.pop()
        floors.append((a + shift, b + shift))
        for u, v, t in split(pieces, a + shift, b + shift):
            steps += 1
            if steps > budget:
                raise BudgetExhausted(f"first return to [{lo}, {hi}) exceeded {budget} steps")
            total = shift + t
            for x, y, inside in _cut(lo, hi, u + t, v + t):
                start = (x - total, y - total, total)
                (done if inside else work).append(start)
    done.sort(key=lambda p: p[0])
    merged = []
    for a, b, t in done:
        if merged and merged[-1][2] == t and merged[-1][1] == a:
            merged[-1] = (merged[-1][0], b, t)
        else:
            merged.append((a, b, t))
    return InducedMap(lo, hi, tuple(merged), IntervalSet.of(floors), steps)


# ---- restricted rotations ----


@dataclass(frozen=True)
class RestrictedRotation:
    lo: Scalar
    hi: Scalar
    angle: Scalar

    @property
    def is_gap(self) -> bool:
        return self.angle == ZERO

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo


@dataclass(frozen=True)
class NotOfThisForm:
    reason: str

    def __str__(self):
        return self.reason


def invariant_cuts(f: Iet) -> List[Scalar]:
    """Breakpoints c with f([0, c)) = [0, c)."""
    cuts = []
    pieces = f.pieces()
    for k in range(1, f.size):
        c = f.breakpoints[k]
        if all(compare(b + t, c) <= 0 for _, b, t in pieces[:k]):
            cuts.append(c)
    return cuts


def detect_restricted_rotation_product(
    f: Iet,
) -> Union[List[RestrictedRotation], NotOfThisForm]:
    bounds = [ZERO] + invariant_cuts(f) + [ONE]
    out = []
    for lo, hi in zip(bounds, bounds[1:]):
        inside = split(f.pieces(), lo, hi)
        if len(inside) == 1:
            out.append(RestrictedRotation(lo, hi, ZERO))
            continue
        if len(inside) != 2:
            return NotOfThisForm(
                f"[{lo}, {hi}) is invariant but exchanges {len(inside)} intervals"
            )
        (a, m, t1), (_, c, t2) = inside
        if t1 != c - m or t2 != a - m:
            return NotOfThisForm(f"[{lo}, {hi}) is not a rotation")
        out.append(RestrictedRotation(lo, hi, c - m))
    return out
