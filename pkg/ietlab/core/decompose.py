"""
Decomposition of an IET into periodic and minimal components.

Periodic points are located through the closed breakpoint orbits. The rest is
cut into minimal components, each certified by an exact first-return map whose
permutation is irreducible and whose lengths are linearly independent over Q.
Whatever the budget does not settle is reported as Unresolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import config
from ietlab.core.iet import InducedMap, Iet, first_return, orbit, power
from ietlab.core.intervals import IntervalSet
from ietlab.core.perm import Permutation
from ietlab.core.scalar import Scalar, compare, q_rank
from ietlab.logging import LOGGER
from ietlab.utils.exceptions import BudgetExhausted, InternalVerificationFailed

log = LOGGER(__name__)


@dataclass(frozen=True)
class KeaneCertificate:
    induced_lengths: Tuple[Scalar, ...]
    permutation: Permutation
    irreducible: bool
    q_rank_value: int
    interval: Tuple[Scalar, Scalar]


@dataclass(frozen=True)
class Periodic:
    period: int

    def __str__(self):
        return f"periodic, period {self.period}"


@dataclass(frozen=True)
class Minimal:
    certificate: KeaneCertificate

    def __str__(self):
        return "minimal"


@dataclass(frozen=True)
class Unresolved:
    budget_spent: int

    def __str__(self):
        return f"unresolved after {self.budget_spent} steps"


Kind = Union[Periodic, Minimal, Unresolved]


@dataclass(frozen=True)
class Component:
    support: IntervalSet
    kind: Kind


@dataclass(frozen=True)
class ComponentDecomposition:
    components: Tuple[Component, ...]

    def of_kind(self, kind: type) -> List[Component]:
        return [c for c in self.components if isinstance(c.kind, kind)]

    @property
    def periodic_set(self) -> IntervalSet:
        out = IntervalSet()
        for c in self.of_kind(Periodic):
            out = out.union(c.support)
        return out

    @property
    def is_periodic(self) -> bool:
        return len(self.components) == len(self.of_kind(Periodic))

    @property
    def is_minimal_everywhere(self) -> bool:
        return len(self.components) == len(self.of_kind(Minimal))


@dataclass(frozen=True)
class Tower:
    """Floors J_1 .. J_p with f(J_k) = J_{k+1} and f(J_p) = J_1."""

    floors: Tuple[Tuple[Scalar, Scalar], ...]

    @property
    def height(self) -> int:
        return len(self.floors)


# ---- periodic part ----


def _closed_orbits(f: Iet, budget: int) -> Tuple[List[List[Scalar]], bool]:
    closed, seen, everything = [], set(), True
    for b in f.breakpoints:
        if b in seen:
            continue
        points = orbit(f, b, budget)
        if points is None:
            everything = False
            continue
        seen.update(points)
        closed.append(points)
    return closed, everything


def _periodic_set(f: Iet, closed, everything: bool) -> IntervalSet:
    if everything:
        return IntervalSet.full()
    out = IntervalSet()
    for p in sorted({len(points) for points in closed}):
        out = out.union(power(f, p).fixed_points())
    return out


def _atoms(per: IntervalSet, cuts: List[Scalar]) -> List[Tuple[Scalar, Scalar]]:
    atoms = []
    for lo, hi in per:
        inner = [c for c in cuts if compare(lo, c) < 0 < compare(hi, c)]
        bounds = [lo] + inner + [hi]
        atoms.extend(zip(bounds, bounds[1:]))
    return atoms


def _towers(f: Iet, per: IntervalSet, closed) -> List[Tower]:
    cuts = sorted({x for points in closed for x in points})
    atoms = _atoms(per, cuts)
    by_left: Dict[Scalar, Tuple[Scalar, Scalar]] = {a: (a, b) for a, b in atoms}
    towers, used = [], set()
    for a, b in atoms:
        if a in used:
            continue
        floors = [(a, b)]
        used.add(a)
        x = f.evaluate(a)
        while x != a:
            if x not in by_left:
                raise InternalVerificationFailed(f"periodic atom at {a} is not mapped onto an atom")
            floors.append(by_left[x])
            used.add(x)
            x = f.evaluate(x)
        towers.append(Tower(tuple(floors)))
    return towers


def periodic_towers(f: Iet, budget: Optional[int] = None) -> List[Tower]:
    """The towers of intervals carrying the periodic points of f."""
    budget = budget or config.BUDGET
    closed, everything = _closed_orbits(f, budget)
    return _towers(f, _periodic_set(f, closed, everything), closed)


# ---- minimal part ----


def is_irreducible(pi: Permutation) -> bool:
    top = 0
    for k in range(1, pi.n):
        top = max(top, pi(k))
        if top == k:
            return False
    return True


def _first_block(pi: Permutation) -> int:
    top = 0
    for k in range(1, pi.n + 1):
        top = max(top, pi(k))
        if top == k:
            return k
    return pi.n


class _Budget:
    def __init__(self, total: int):
        self.total = total
        self.spent = 0

    def charge(self, steps: int):
        self.spent += steps
        if self.spent > self.total:
            raise BudgetExhausted(f"decomposition exceeded {self.total} steps")

    @property
    def left(self) -> int:
        return max(self.total - self.spent, 1)


def keane_certificate(f: Iet, lo: Scalar, hi: Scalar, budget: _Budget) -> Optional[KeaneCertificate]:
    """Induce on [lo, hi) until the Keane criterion applies; None when it degenerates."""
    induced = first_return(f, lo, hi, budget.left)
    budget.charge(induced.steps)
    while True:
        pi = induced.permutation()
        if pi.n == 1:
            return None
        if not is_irreducible(pi):
            induced = induced.restricted_to(_first_block(pi))
            continue
        lengths = induced.lengths()
        rank = q_rank(lengths, include_one=False)
        if rank == pi.n:
            return KeaneCertificate(tuple(lengths), pi, True, rank, (induced.lo, induced.hi))
        induced = _rauzy_step(induced, budget)


def _rauzy_step(induced: InducedMap, budget: _Budget) -> InducedMap:
    pieces = induced.pieces()
    top = pieces[-1][1] - pieces[-1][0]
    a, b, t = max(pieces, key=lambda p: p[0] + p[2])
    bottom = b - a
    cut = top if compare(top, bottom) <= 0 else bottom
    log.debug(f"induction step on [{induced.lo}, {induced.hi}) by {cut}")
    nxt = first_return(induced, induced.lo, induced.hi - cut, budget.left)
    budget.charge(nxt.steps)
    return nxt


# ---- driver ----


def decompose(f: Iet, budget: Optional[int] = None) -> ComponentDecomposition:
    budget = budget or config.BUDGET
    closed, everything = _closed_orbits(f, budget)
    per = _periodic_set(f, closed, everything)
    components = []

    by_period: Dict[int, IntervalSet] = {}
    for tower in _towers(f, per, closed):
        support = IntervalSet.of(tower.floors)
        by_period[tower.height] = by_period.get(tower.height, IntervalSet()).union(support)
    for p, support in sorted(by_period.items()):
        if not power(f, p).is_identity_on(support):
            raise InternalVerificationFailed(f"f^{p} is not the identity on {support}")
        components.append(Component(support, Periodic(p)))

    pending = per.complement()
    meter = _Budget(budget)
    while not pending.is_empty:
        lo, hi = next(iter(pending))
        try:
            certificate = keane_certificate(f, lo, hi, meter)
            if certificate is None:
                break
            support = first_return(f, *certificate.interval, meter.left).floors
        except BudgetExhausted:
            break
        components.append(Component(support, Minimal(certificate)))
        pending = pending.difference(support)
    if not pending.is_empty:
        log.warning(f"decomposition left {pending} unresolved after {meter.spent} steps")
        components.append(Component(pending, Unresolved(meter.spent)))

    components.sort(key=lambda c: c.support.left)
    result = ComponentDecomposition(tuple(components))
    _check(f, result)
    log.info(
        f"decomposed into {len(result.of_kind(Periodic))} periodic, "
        f"{len(result.of_kind(Minimal))} minimal, {len(result.of_kind(Unresolved))} unresolved"
    )
    return result


def _check(f: Iet, result: ComponentDecomposition):
    covered = IntervalSet()
    for c in result.components:
        if covered.intersects(c.support):
            raise InternalVerificationFailed(f"component {c.support} overlaps another")
        if f.image(c.support) != c.support:
            raise InternalVerificationFailed(f"component {c.support} is not invariant")
        covered = covered.union(c.support)
    if covered != IntervalSet.full():
        raise InternalVerificationFailed("components do not cover [0, 1)")
