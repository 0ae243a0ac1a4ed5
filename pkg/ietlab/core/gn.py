"""
The groups G_n of partition-preserving IETs.

An element ``f = (alpha, sigma)`` acts on the block ``I_i = [(i-1)/n, i/n)`` as
``x -> x + alpha_i + (sigma(i) - i)/n`` taken mod 1/n inside the target block,
i.e. a rotation of the block circle followed by a move to block ``sigma(i)``.

With the apply-right-first convention::

    alpha(f o g)[i] = alpha(g)[i] + alpha(f)[sigma_g(i)]
    sigma(f o g)    = sigma_f o sigma_g
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import config
from ietlab.core.iet import Iet
from ietlab.core.perm import (
    Permutation,
    is_reverser,
    reversing_involution,
    reversing_involutions,
)
from ietlab.core.scalar import (
    ZERO,
    CircleValue,
    as_scalar,
    floor,
    q_rank,
    reduce_mod,
)
from ietlab.logging import LOGGER
from ietlab.utils.exceptions import (
    AObstruction,
    EnumerationBoundExceeded,
    InternalVerificationFailed,
    NotAnInvolution,
    NotAReverser,
    NotInGn,
    SizeMismatch,
)

log = LOGGER(__name__)


class _InfiniteOrder:
    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = _InfiniteOrder()


@dataclass(frozen=True)
class GnElement:
    alpha: Tuple[CircleValue, ...]
    sigma: Permutation

    def __post_init__(self):
        if len(self.alpha) != self.sigma.n:
            raise SizeMismatch(f"{len(self.alpha)} angles for a permutation of {self.sigma.n}")
        modulus = Fraction(1, self.sigma.n)
        if any(a.modulus != modulus for a in self.alpha):
            raise SizeMismatch(f"angles of an element of G_{self.sigma.n} live mod 1/{self.sigma.n}")

    @classmethod
    def make(cls, alpha: Sequence, sigma: Permutation) -> "GnElement":
        modulus = Fraction(1, sigma.n)
        return cls(tuple(reduce_mod(as_scalar(a), modulus) for a in alpha), sigma)

    @classmethod
    def identity(cls, n: int) -> "GnElement":
        return cls.lift(Permutation.identity(n))

    @classmethod
    def lift(cls, sigma: Permutation) -> "GnElement":
        """The element (0, sigma)."""
        zero = CircleValue(Fraction(1, sigma.n), ZERO)
        return cls((zero,) * sigma.n, sigma)

    @property
    def n(self) -> int:
        return self.sigma.n

    @property
    def modulus(self) -> Fraction:
        return Fraction(1, self.n)

    @property
    def is_identity(self) -> bool:
        return self.sigma.is_identity and all(a.is_zero for a in self.alpha)

    def angle(self, i: int) -> CircleValue:
        return self.alpha[i - 1]

    def __mul__(self, other: "GnElement") -> "GnElement":
        return compose(self, other)

    def inverse(self) -> "GnElement":
        return inverse(self)

    def __str__(self):
        return "gn n={} sigma={} alpha={}".format(
            self.n, self.sigma, ", ".join(str(a) for a in self.alpha)
        )


def compose(f: GnElement, g: GnElement) -> GnElement:
    if f.n != g.n:
        raise SizeMismatch(f"cannot compose elements of G_{f.n} and G_{g.n}")
    alpha = tuple(g.alpha[i] + f.alpha[g.sigma(i + 1) - 1] for i in range(g.n))
    return GnElement(alpha, f.sigma * g.sigma)


def inverse(f: GnElement) -> GnElement:
    back = f.sigma.inverse()
    return GnElement(tuple(-f.alpha[back(i) - 1] for i in range(1, f.n + 1)), back)


def power(f: GnElement, k: int) -> GnElement:
    base = f if k >= 0 else inverse(f)
    result = GnElement.identity(f.n)
    k = abs(k)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def is_involution(f: GnElement) -> bool:
    if not f.sigma.is_involution:
        return False
    return all(f.angle(f.sigma(i)) == -f.angle(i) for i in range(1, f.n + 1))


def a_morphism(f: GnElement) -> CircleValue:
    total = sum((a.representative for a in f.alpha), ZERO)
    return reduce_mod(total * 2, f.modulus)


def order(f: GnElement):
    """Least k with f^k = id, or INFINITE."""
    m = f.sigma.order()
    g = power(f, m)
    denominators = []
    for a in g.alpha:
        if not a.representative.is_rational:
            return INFINITE
        denominators.append((a.representative.constant * f.n).denominator)
    return m * reduce(math.lcm, denominators, 1)


def rank(f: GnElement) -> int:
    return q_rank([a.representative for a in f.alpha])


def is_reversed_by(f: GnElement, h: GnElement) -> bool:
    return compose(h, compose(f, inverse(h))) == inverse(f)


def reverser_family(f: GnElement, h: GnElement, s: int) -> GnElement:
    """h o f^s, which reverses f whenever h does."""
    if not is_reversed_by(f, h):
        raise NotAReverser("h does not conjugate f to its inverse")
    out = compose(h, power(f, s))
    if not is_reversed_by(f, out):
        raise InternalVerificationFailed("h o f^s failed to reverse f")
    return out


# ---- strong reversibility ----


class Case(str, Enum):
    A_FIXED = "A-fixed"
    A_SIGMA = "A-sigma"
    B = "B"


@dataclass(frozen=True)
class OrbitData:
    representative: int
    case: Case
    orbit: Tuple[int, ...]
    condition_holds: bool
    admissible_choices: Tuple[CircleValue, ...]
    # True when any value of alpha_u(T) is admissible; the choices are then a sample
    free: bool = False


@dataclass(frozen=True)
class ReversibilityReport:
    reverser_sigma: Permutation
    orbit_data: Tuple[OrbitData, ...]
    witnesses: Tuple[GnElement, ...]

    @property
    def holds(self) -> bool:
        return bool(self.witnesses)

    @property
    def failing_orbits(self) -> Tuple[OrbitData, ...]:
        return tuple(o for o in self.orbit_data if not o.condition_holds)


def _joint_orbits(a: Permutation, b: Permutation, points: Optional[Iterable[int]] = None):
    todo = sorted(points) if points is not None else list(range(1, a.n + 1))
    seen = set()
    out = []
    for start in todo:
        if start in seen:
            continue
        orbit, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in (a(x), b(x)):
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        out.append(tuple(sorted(orbit)))
    return out


def _case_of(sigma: Permutation, tau: Permutation, u: int) -> Optional[Case]:
    cycle = sigma.cycle_of(u)
    t = tau(u)
    if t not in cycle:
        return Case.B
    if t == u:
        return Case.A_FIXED
    if t == sigma(u):
        return Case.A_SIGMA
    return None


def _check_pair(sigma: Permutation, tau: Permutation):
    if sigma.n != tau.n:
        raise SizeMismatch(f"sigma on {sigma.n} points, tau on {tau.n}")
    if not tau.is_involution:
        raise NotAnInvolution(f"tau = {tau.cycle_string()} is not an involution")
    if not is_reverser(tau, sigma):
        raise NotAReverser(f"tau = {tau.cycle_string()} does not reverse {sigma.cycle_string()}")


def _classified(sigma: Permutation, tau: Permutation, points=None):
    out = []
    for orbit in _joint_orbits(sigma, tau, points):
        for u in orbit:
            case = _case_of(sigma, tau, u)
            if case is not None:
                out.append((u, case, orbit))
                break
        else:
            raise InternalVerificationFailed(f"no distinguished point in orbit {orbit}")
    return out


def distinguished_representatives(sigma: Permutation, tau: Permutation) -> List[int]:
    _check_pair(sigma, tau)
    return [u for u, _, _ in _classified(sigma, tau)]


def _condition(f: GnElement, tau: Permutation, u: int) -> CircleValue:
    """Left-hand side of the orbit condition at u."""
    cycle = f.sigma.cycle_of(u)
    total = ZERO
    for j in cycle:
        total = total + f.angle(j).representative + f.angle(tau(j)).representative
    return reduce_mod(total, f.modulus)


def _choices(f: GnElement, u: int, case: Case, policy: str) -> Tuple[CircleValue, ...]:
    half = CircleValue(f.modulus, ZERO).shift(f.modulus / 2)
    zero = CircleValue(f.modulus, ZERO)
    if case is Case.A_FIXED:
        return zero, half
    if case is Case.A_SIGMA:
        return f.angle(u), f.angle(u) + half
    if policy == "enumerate":
        sample = [zero, half, f.angle(u)]
        return tuple(dict.fromkeys(sample))
    return (zero,)


def _fill(f: GnElement, tau: Permutation, u: int, case: Case, start: CircleValue):
    """Angles of T on the orbit of u, given alpha_u(T) = start."""
    cycle = f.sigma.cycle_of(u)
    beta = {u: start}
    current = start
    for k in range(1, len(cycle)):
        current = current - f.angle(cycle[k - 1]) - f.angle(tau(cycle[k]))
        beta[cycle[k]] = current
    if case is Case.B:
        for j in cycle:
            beta[tau(j)] = -beta[j]
    return beta


def _verify_witness(f: GnElement, t: GnElement):
    if not is_involution(t):
        raise InternalVerificationFailed(f"constructed {t} is not an involution")
    if compose(t, compose(f, t)) != inverse(f):
        raise InternalVerificationFailed(f"constructed {t} does not reverse {f}")


def strong_reversibility_by(
    f: GnElement, tau: Permutation, choice_policy: str = "default"
) -> ReversibilityReport:
    _check_pair(f.sigma, tau)
    orbits = []
    for u, case, orbit in _classified(f.sigma, tau):
        holds = _condition(f, tau, u).is_zero
        orbits.append(
            OrbitData(
                representative=u,
                case=case,
                orbit=orbit,
                condition_holds=holds,
                admissible_choices=_choices(f, u, case, choice_policy) if holds else (),
                free=case is Case.B,
            )
        )
    if not all(o.condition_holds for o in orbits):
        log.info(f"tau = {tau.cycle_string()} does not strongly reverse {f}")
        return ReversibilityReport(tau, tuple(orbits), ())

    witnesses = []
    for selection in itertools.islice(
        itertools.product(*(o.admissible_choices for o in orbits)), config.WITNESS_LIMIT
    ):
        angles: Dict[int, CircleValue] = {}
        for o, start in zip(orbits, selection):
            angles.update(_fill(f, tau, o.representative, o.case, start))
        t = GnElement(tuple(angles[i] for i in range(1, f.n + 1)), tau)
        _verify_witness(f, t)
        witnesses.append(t)
    return ReversibilityReport(tau, tuple(orbits), tuple(witnesses))


def find_strong_reversers(
    f: GnElement, bound: Optional[int] = None
) -> List[ReversibilityReport]:
    bound = bound or config.ENUMERATION_BOUND
    if f.n > bound:
        raise EnumerationBoundExceeded(f"n = {f.n} exceeds the enumeration bound {bound}")
    return [strong_reversibility_by(f, tau) for tau in reversing_involutions(f.sigma)]


def _sign_function(sh: Permutation, cycle: Sequence[int], orbit: Sequence[int]):
    powers = [Permutation.identity(sh.n)]
    for _ in range(2 * sh.order()):
        powers.append(sh * powers[-1])
    eps = {}
    for j in orbit:
        for s, p in enumerate(powers):
            if p(j) in cycle:
                eps[j] = 1 if s % 2 == 0 else -1
                break
    return eps


def strengthen_reverser(f: GnElement, h: GnElement) -> GnElement:
    """An involution reversing f, built from an arbitrary reverser h."""
    if not is_reversed_by(f, h):
        raise NotAReverser("h does not conjugate f to its inverse")
    sf, sh = f.sigma, h.sigma
    h_inv = inverse(h)
    angles: Dict[int, CircleValue] = {}
    images: Dict[int, int] = {}
    for orbit in _joint_orbits(sf, sh):
        i = orbit[0]
        cycle = sf.cycle_of(i)
        odd = next(
            (s for s in range(1, 2 * sh.order() + 1, 2) if sh.power(s)(i) in cycle), None
        )
        if odd is not None:
            t = cycle.index(sh.power(odd)(i))
            t1 = compose(power(h, odd), power(f, t))
            tau = t1.sigma
            for u, case, sub in _classified(sf, tau, orbit):
                if not _condition(f, tau, u).is_zero:
                    raise InternalVerificationFailed(f"orbit condition fails on {sub}")
                angles.update(_fill(f, tau, u, case, _choices(f, u, case, "default")[0]))
                images.update({j: tau(j) for j in sub})
            log.debug(f"orbit {orbit}: odd power {odd}, f-power {t}")
        else:
            eps = _sign_function(sh, cycle, orbit)
            for j in orbit:
                source = h if eps[j] > 0 else h_inv
                angles[j] = source.angle(j)
                images[j] = source.sigma(j)
            log.debug(f"orbit {orbit}: sign function {eps}")
    t = GnElement(
        tuple(angles[i] for i in range(1, f.n + 1)),
        Permutation(tuple(images[i] for i in range(1, f.n + 1))),
    )
    _verify_witness(f, t)
    return t


# ---- factorizations ----


def _require_kernel(f: GnElement):
    a = a_morphism(f)
    if not a.is_zero:
        raise AObstruction(
            f"A(f) = {a} is not 0 mod 1/{f.n}: f lies outside the kernel of A, "
            "which coincides with the subgroup generated by involutions"
        )


def _check_product(factors: Sequence[GnElement], f: GnElement):
    product = GnElement.identity(f.n)
    for x in factors:
        product = compose(product, x)
    if product != f:
        raise InternalVerificationFailed("factors do not recompose to f")


def factor_four_involutions(f: GnElement) -> List[GnElement]:
    _require_kernel(f)
    if is_involution(f):
        return [f]
    gamma = Permutation.cycle(f.n)
    t = GnElement.lift(gamma * f.sigma.inverse())
    r = GnElement.lift(reversing_involution(t.sigma))
    tf = compose(t, f)
    report = strong_reversibility_by(tf, reversing_involution(tf.sigma))
    if not report.witnesses:
        raise InternalVerificationFailed("T o f with an n-cycle and A = 0 was not reversible")
    s = report.witnesses[0]
    factors = [x for x in (compose(r, t), r, s, compose(s, tf)) if not x.is_identity]
    factors = factors or [GnElement.identity(f.n)]
    for x in factors:
        if not is_involution(x):
            raise InternalVerificationFailed(f"factor {x} is not an involution")
    _check_product(factors, f)
    log.info(f"factored an element of G_{f.n} into {len(factors)} involutions")
    return factors


def factor_two_periodic(f: GnElement) -> List[GnElement]:
    """f = T^-1 o (T o f) with both factors of finite order."""
    _require_kernel(f)
    t = GnElement.lift(Permutation.cycle(f.n) * f.sigma.inverse())
    factors = [inverse(t), compose(t, f)]
    for x in factors:
        if order(x) is INFINITE:
            raise InternalVerificationFailed(f"factor {x} has infinite order")
    _check_product(factors, f)
    return factors


def order_bound_holds(f: GnElement) -> bool:
    """For A(f) = 0 and sigma_f an n-cycle the order of f divides 2n."""
    if len(f.sigma.cycles()) != 1 or not a_morphism(f).is_zero:
        return True
    k = order(f)
    return k is not INFINITE and (2 * f.n) % k == 0


# ---- conversion ----


def to_iet(f: GnElement) -> Iet:
    n, width = f.n, f.modulus
    breakpoints, translations = [], []
    for i in range(1, n + 1):
        a = f.angle(i).representative
        shift = Fraction(f.sigma(i) - i, n)
        breakpoints.append(as_scalar(Fraction(i - 1, n)))
        translations.append(a + shift)
        if not a == ZERO:
            breakpoints.append(Fraction(i, n) - a)
            translations.append(a + shift - width)
    return Iet.from_pieces(breakpoints, translations)


def from_iet(g: Iet, n: int) -> GnElement:
    angles, targets = [], []
    for i in range(1, n + 1):
        y = g.evaluate(as_scalar(Fraction(i - 1, n)))
        j = floor(y * n) + 1
        targets.append(j)
        angles.append(reduce_mod(y - Fraction(j - 1, n), Fraction(1, n)))
    try:
        sigma = Permutation(tuple(targets))
    except ValueError:
        block = next(i for i, j in enumerate(targets, start=1) if targets.count(j) > 1)
        raise NotInGn(f"blocks are not permuted; block {block} collides", block)
    candidate = GnElement(tuple(angles), sigma)
    mismatch = g.first_difference(to_iet(candidate))
    if mismatch is not None:
        block = floor(mismatch[0] * n) + 1
        raise NotInGn(
            f"not a rotation into a single block on I_{block} "
            f"(differs on [{mismatch[0]}, {mismatch[1]}))",
            block,
        )
    return candidate
