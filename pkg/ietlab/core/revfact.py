"""
Reversibility and factorization into involutions for general IETs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import config
from ietlab.core import gn
from ietlab.core.decompose import (
    Periodic,
    Unresolved,
    decompose,
    periodic_towers,
)
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
    split,
)
from ietlab.core.intervals import IntervalSet
from ietlab.core.perm import Permutation
from ietlab.core.pl import conjugate_by_pl, normalize_pieces
from ietlab.core.saf import SafTensor, is_zero, saf
from ietlab.core.scalar import (
    Scalar,
    as_scalar,
    compare,
    enclosure,
    ratio_is_rational,
    sign,
)
from ietlab.logging import LOGGER
from ietlab.utils.exceptions import (
    HypothesesViolated,
    InternalVerificationFailed,
    NotAnIet,
    NotApplicable,
    NotAReverser,
    NotAThreeIet,
    NotInGn,
    NotPeriodicWithinBudget,
    RationalGapNotFound,
    UnresolvedComponent,
)

log = LOGGER(__name__)


@dataclass(frozen=True)
class FactorizationResult:
    factors: Tuple[Iet, ...]
    kind: str
    orders: Tuple[int, ...]
    recomposed: bool = True

    def __len__(self):
        return len(self.factors)


def product(factors: Sequence[Iet]) -> Iet:
    out = Iet.identity()
    for g in factors:
        out = compose(out, g)
    return out


def _result(factors: Sequence[Iet], f: Iet, kind: str, budget: int) -> FactorizationResult:
    if product(factors) != f:
        raise InternalVerificationFailed("factors do not recompose to f")
    orders = []
    for g in factors:
        k = period(g, budget)
        if isinstance(k, NotFoundWithinBudget) or (kind == "involutions" and k > 2):
            raise InternalVerificationFailed(f"factor {g} is not of the claimed finite order")
        orders.append(k)
    return FactorizationResult(tuple(factors), kind, tuple(orders))


def _require_reverser(f: Iet, h: Iet):
    if not is_reversed_by(f, h):
        raise NotAReverser("h o f o h^-1 is not f^-1")


def patch(parts: Sequence[Tuple[IntervalSet, Iet]]) -> Iet:
    """The IET agreeing with each map on its support; the supports must partition [0, 1)."""
    pieces = []
    for support, g in parts:
        for lo, hi in support:
            pieces.extend(split(g.pieces(), lo, hi))
    pieces.sort(key=lambda p: p[0])
    return Iet.from_pieces([p[0] for p in pieces], [p[2] for p in pieces])


# ---- periodic maps ----


def tower_involution(f: Iet, budget: Optional[int] = None) -> Iet:
    """Exchange the floors J_k and J_{p+1-k} of every periodic tower of f by translation."""
    parts = []
    for tower in periodic_towers(f, budget):
        floors = tower.floors
        for k, (lo, hi) in enumerate(floors):
            target = floors[-1 - k][0]
            parts.append((lo, hi, target - lo))
    parts.sort(key=lambda p: p[0])
    return Iet.from_pieces([p[0] for p in parts], [p[2] for p in parts])


def _periodic_part(f: Iet, support: IntervalSet, budget: int) -> Iet:
    """The tower involution of f on an invariant set of periodic points, identity elsewhere."""
    rest = support.complement()
    restricted = patch([(support, f), (rest, Iet.identity())])
    return tower_involution(restricted, budget)


def factor_periodic_two_involutions(f: Iet, budget: Optional[int] = None) -> FactorizationResult:
    budget = budget or config.BUDGET
    p = period(f, budget)
    if isinstance(p, NotFoundWithinBudget):
        raise NotPeriodicWithinBudget(f"f is not periodic within budget {budget}")
    first = tower_involution(f, budget)
    second = compose(first, f)
    log.info(f"split a map of period {p} into two involutions")
    return _result([first, second], f, "involutions", budget)


# ---- finite order reversers ----


def _finite_order_power(h: Iet, support: IntervalSet, limit: int) -> Optional[Iet]:
    """A power of h of order 2 or 4k reversing whatever h reverses, on ``support``."""
    g = Iet.identity()
    for k in range(1, limit + 1):
        g = compose(h, g)
        if g.is_identity_on(support):
            if k % 2:
                # h^k = id with k odd forces f^2 = id on support; no power of h has even order
                return None
            if (k // 2) % 2:
                return power(h, k // 2)
            return h
    return None


def _through_gn(f: Iet, h: Iet) -> Optional[Iet]:
    """Normalize f into G_n, strengthen the conjugated reverser there and pull back."""
    pieces = detect_restricted_rotation_product(f)
    if not isinstance(pieces, list):
        return None
    try:
        R, F = normalize_pieces(f, pieces)
        H = from_iet(conjugate_by_pl(h, R), F.n)
    except (NotAnIet, NotInGn) as err:
        log.debug(f"G_n route unavailable: {err}")
        return None
    T = strengthen_reverser(F, H)
    return conjugate_by_pl(to_iet(T), R.inverse())


def _minimal_part(f: Iet, h: Iet, support: IntervalSet, budget: int) -> Tuple[IntervalSet, Iet]:
    """Reverser of finite order on the union M of the h-orbit of a minimal support."""
    h_inv = inverse(h)
    orbit = [support]
    image = h.image(support)
    while image != support:
        if len(orbit) > budget:
            raise UnresolvedComponent(f"h-orbit of {support} does not close")
        orbit.append(image)
        image = h.image(image)
    union = IntervalSet()
    for s in orbit:
        union = union.union(s)
    if len(orbit) % 2 == 0:
        parts = [(s, h if j % 2 == 0 else h_inv) for j, s in enumerate(orbit)]
        parts.append((union.complement(), Iet.identity()))
        return union, patch(parts)
    g = _finite_order_power(h, union, config.ORDER_SEARCH_LIMIT)
    if g is None:
        raise UnresolvedComponent(
            f"h has no finite order up to {config.ORDER_SEARCH_LIMIT} on {union}"
        )
    return union, g


def finite_order_reverser(f: Iet, h: Iet, budget: Optional[int] = None) -> Iet:
    """A reverser of f of finite order: an involution or of order divisible by 4."""
    budget = budget or config.BUDGET
    _require_reverser(f, h)
    if f.is_identity:
        return Iet.rotation(Fraction(1, 2))
    if compose(f, f).is_identity:
        # an involution reverses itself
        return f
    g = _finite_order_power(h, IntervalSet.full(), config.ORDER_SEARCH_LIMIT)
    if g is None:
        g = _assemble(f, h, budget)
    _require_reverser(f, g)
    k = period(g, budget)
    if isinstance(k, NotFoundWithinBudget):
        raise InternalVerificationFailed("constructed reverser is not of finite order")
    if k != 2 and k % 4:
        raise InternalVerificationFailed(f"constructed reverser has order {k}, not 2 or a multiple of 4")
    log.info(f"finite order reverser of order {k}")
    return g


def _assemble(f: Iet, h: Iet, budget: int) -> Iet:
    decomposition = decompose(f, budget)
    if decomposition.is_periodic:
        return tower_involution(f, budget)
    if decomposition.is_minimal_everywhere:
        g = _through_gn(f, h)
        if g is not None:
            return g
    parts, done = [], IntervalSet()
    for component in decomposition.components:
        if isinstance(component.kind, Unresolved):
            raise UnresolvedComponent(f"could not classify the dynamics on {component.support}")
        if done.intersects(component.support):
            continue
        if isinstance(component.kind, Periodic):
            parts.append((component.support, _periodic_part(f, component.support, budget)))
            done = done.union(component.support)
        else:
            union, g = _minimal_part(f, h, component.support, budget)
            parts.append((union, g))
            done = done.union(union)
    return patch(parts)


# ---- factorizations through reversers ----


def factor_reversible_four_involutions(
    f: Iet, h: Iet, budget: Optional[int] = None
) -> FactorizationResult:
    budget = budget or config.BUDGET
    _require_reverser(f, h)
    if compose(f, f).is_identity:
        return _result([f], f, "involutions", budget)
    if not isinstance(period(f, budget), NotFoundWithinBudget):
        return factor_periodic_two_involutions(f, budget)
    two = factor_two_periodic(f, h, budget)
    factors = []
    for g in two.factors:
        factors.extend(x for x in factor_periodic_two_involutions(g, budget).factors if not x.is_identity)
    log.info(f"factored a reversible map into {len(factors)} involutions")
    return _result(factors or [Iet.identity()], f, "involutions", budget)


def factor_two_periodic(f: Iet, h: Iet, budget: Optional[int] = None) -> FactorizationResult:
    """f = h' o (h'^-1 o f) with h' a reverser of finite order."""
    budget = budget or config.BUDGET
    g = finite_order_reverser(f, h, budget)
    return _result([g, compose(inverse(g), f)], f, "periodic", budget)


# ---- three-interval exchanges ----


@dataclass(frozen=True)
class ThreeIetReport:
    saf_value: SafTensor
    saf_zero: bool
    periodic: bool
    period: Union[int, NotFoundWithinBudget, None]
    involution_pair: Optional[FactorizationResult]
    anomaly: bool = False


def three_iet_analysis(f: Iet, budget: Optional[int] = None) -> ThreeIetReport:
    """For at most three intervals, SAF zero is equivalent to periodicity."""
    budget = budget or config.BUDGET
    if f.size > 3:
        raise NotAThreeIet(f"f exchanges {f.size} intervals")
    value = saf(f)
    if not is_zero(value):
        return ThreeIetReport(value, False, False, None, None)
    p = period(f, budget)
    if isinstance(p, NotFoundWithinBudget):
        log.warning(f"3-IET with zero SAF is not periodic within budget {budget}: {f}")
        return ThreeIetReport(value, True, False, p, None, anomaly=True)
    return ThreeIetReport(value, True, True, p, factor_periodic_two_involutions(f, budget))


# ---- two restricted rotations ----


@dataclass(frozen=True)
class RrCertificate:
    l1: Scalar
    l2: Scalar
    delta1: Scalar
    delta2: Scalar
    irrational_ratios: Tuple[int, ...]

    @property
    def argument(self) -> str:
        which = " and ".join(f"delta{i}/l{i}" for i in self.irrational_ratios)
        return (
            f"l1 != l2 and {which} irrational: a reverser maps minimal components to minimal "
            "ones of the same length, so it would preserve a minimal rotation interval and "
            "reverse an irrational rotation there, which no interval exchange does"
        )


def rr_non_reversibility_certificate(f: Iet) -> RrCertificate:
    pieces = detect_restricted_rotation_product(f)
    if not isinstance(pieces, list) or len(pieces) != 2:
        raise NotApplicable("f is not a product of exactly two restricted rotations")
    (first, second) = pieces
    if first.length == second.length:
        raise NotApplicable("the two rotation intervals have the same length")
    irrational = tuple(
        i for i, piece in enumerate(pieces, start=1)
        if not ratio_is_rational(piece.angle, piece.length)
    )
    if not irrational:
        raise NotApplicable("both rotation numbers are rational")
    return RrCertificate(first.length, second.length, first.angle, second.angle, irrational)


# ---- six involutions ----


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of least denominator in the open interval (lo, hi), closest to 0 among integers."""
    if lo >= hi:
        raise ValueError(f"({lo}, {hi}) is empty")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = math.floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    if lo == n:
        return n + Fraction(1, math.floor(1 / (hi - n)) + 1)
    return n + 1 / simplest_between(1 / (hi - n), 1 / (lo - n))


def _rational_gap(d1: Scalar, width: Fraction) -> Fraction:
    """The simplest rational q >= 0 with 0 < d1 - q < width."""
    if d1.is_rational:
        lo = hi = d1.constant
    else:
        top = max(d1.table.symbol(n).precision for n, _ in d1.coefficients)
        lo, hi = enclosure(d1, top)
    if hi - width >= lo:
        raise RationalGapNotFound("witness precision cannot place a rational in the gap")
    q = simplest_between(hi - width, lo)
    if q < 0 or not (sign(d1 - q) > 0 and compare(d1 - q, width) < 0):
        raise RationalGapNotFound(f"no rational q >= 0 with 0 < {d1} - q < {width}")
    return q


def rr_map(p: int, delta1, r) -> Iet:
    """The two restricted rotations on [0, p/(p+1)) and [p/(p+1), 1) with delta2 = -p delta1 + r."""
    l1 = Fraction(p, p + 1)
    delta1 = as_scalar(delta1)
    delta2 = delta1 * (-p) + Fraction(r)
    return Iet.restricted_rotations([(0, l1, delta1), (l1, 1, delta2)])


def six_involutions_rr(p: int, delta1, r, budget: Optional[int] = None) -> FactorizationResult:
    budget = budget or config.BUDGET
    if p < 1:
        raise HypothesesViolated("p must be a positive integer")
    delta1, r = as_scalar(delta1), Fraction(r)
    l1 = Fraction(p, p + 1)
    delta2 = delta1 * (-p) + r
    if not (sign(delta1) > 0 and compare(delta1, l1) < 0):
        raise HypothesesViolated(f"delta1 = {delta1} is not in (0, {l1})")
    if not (sign(delta2) >= 0 and compare(delta2, Fraction(1, p + 1)) < 0):
        raise HypothesesViolated(f"delta2 = {delta2} is not in [0, 1/{p + 1})")
    f = rr_map(p, delta1, r)

    # in coordinates stretched by p + 1, [0, p) rotates by d1 and [p, p + 1) by d2
    d1 = delta1 * (p + 1)
    q = _rational_gap(d1, Fraction(1, p))
    angle = d1 - q
    rp = Iet.restricted_rotations([
        (0, l1, Fraction(-q, p + 1)),
        (l1, 1, (-(p + 1) * r + p * q) / (p + 1)),
    ])
    g = compose(f, rp)
    step = GnElement.make(
        [-angle / (p + 1)] * p + [angle * Fraction(p, p + 1)],
        Permutation.cycle(p + 1),
    )
    i = to_iet(step)
    if gn.order(step) != p + 1:
        raise InternalVerificationFailed(f"the block cycle does not have period {p + 1}")
    ig = compose(i, g)
    if isinstance(period(ig, budget), NotFoundWithinBudget):
        raise NotPeriodicWithinBudget(f"i o g is not periodic within budget {budget}")
    log.info(f"six involutions for p = {p}: q = {q}, rotation {angle} on the long interval")
    factors = []
    for h in (inverse(i), ig, inverse(rp)):
        factors.extend(factor_periodic_two_involutions(h, budget).factors)
    return _result(factors, f, "involutions", budget)
