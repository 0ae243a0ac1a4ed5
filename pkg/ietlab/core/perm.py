"""
Permutations of {1..n}.

Composition applies the right operand first: ``(s * r)(i) == s(r(i))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple

from ietlab.utils.exceptions import ParseError, SizeMismatch


@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            for k, point in enumerate(cycle):
                images[point - 1] = cycle[(k + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def cycle(cls, n: int) -> "Permutation":
        """The n-cycle (1 2 ... n)."""
        return cls(tuple(range(2, n + 1)) + (1,))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            out[j - 1] = i
        return Permutation(tuple(out))

    def power(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.n)
        for _ in range(abs(k) % self.order()):
            result = base * result
        return result

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    @property
    def is_involution(self) -> bool:
        return all(self(self(i)) == i for i in range(1, self.n + 1))

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def cycles(self) -> List[List[int]]:
        return cycle_decomposition(self)

    def cycle_of(self, i: int) -> List[int]:
        out = [i]
        j = self(i)
        while j != i:
            out.append(j)
            j = self(j)
        return out

    def apply_to(self, values: Sequence) -> tuple:
        """``sigma(v) = (v[sigma(1)], ..., v[sigma(n)])``."""
        return tuple(values[self(i) - 1] for i in range(1, self.n + 1))

    def __str__(self):
        return " ".join(str(i) for i in self.images)

    def cycle_string(self) -> str:
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in parts)


def _check(a: Permutation, b: Permutation):
    if a.n != b.n:
        raise SizeMismatch(f"permutations of {a.n} and {b.n} points")


def compose(sigma: Permutation, rho: Permutation) -> Permutation:
    _check(sigma, rho)
    return Permutation(tuple(sigma.images[j - 1] for j in rho.images))


def inverse(sigma: Permutation) -> Permutation:
    return sigma.inverse()


def cycle_decomposition(sigma: Permutation) -> List[List[int]]:
    seen = set()
    out = []
    for i in range(1, sigma.n + 1):
        if i not in seen:
            c = sigma.cycle_of(i)
            seen.update(c)
            out.append(c)
    return out


def is_reverser(tau: Permutation, sigma: Permutation) -> bool:
    _check(tau, sigma)
    return tau * sigma * tau.inverse() == sigma.inverse()


def reversing_involution(sigma: Permutation) -> Permutation:
    """Reflect every cycle ``(c0 ... c_{m-1})`` through ``c0``."""
    images = list(range(1, sigma.n + 1))
    for c in sigma.cycles():
        m = len(c)
        for j, point in enumerate(c):
            images[point - 1] = c[(m - j) % m]
    return Permutation(tuple(images))


def involutions(n: int) -> Iterator[Permutation]:
    """All involutions of S_n, fixed points before transpositions at each step."""

    def extend(images: List[int], free: List[int]):
        if not free:
            yield Permutation(tuple(images))
            return
        first, rest = free[0], free[1:]
        yield from extend(images, rest)
        for k, other in enumerate(rest):
            images[first - 1], images[other - 1] = other, first
            yield from extend(images, rest[:k] + rest[k + 1:])
            images[first - 1], images[other - 1] = first, other

    yield from extend(list(range(1, n + 1)), list(range(1, n + 1)))


def reversing_involutions(sigma: Permutation) -> Iterator[Permutation]:
    for tau in involutions(sigma.n):
        if is_reverser(tau, sigma):
            yield tau


_CYCLE = re.compile(r"\(([\d\s,]*)\)")


def parse_permutation(text: str, n: Optional[int] = None, line: int = 1, offset: int = 0):
    """Parse ``2 1 4 3`` (image list) or ``(1 2)(3 4)`` (cycles)."""
    body = text.strip()
    column = offset + len(text) - len(text.lstrip()) + 1
    if body.startswith("("):
        cycles = []
        pos = 0
        while pos < len(body):
            m = _CYCLE.match(body, pos)
            if not m:
                raise ParseError("malformed cycle", line, column + pos)
            points = [int(p) for p in m.group(1).replace(",", " ").split()]
            if points:
                cycles.append(points)
            pos = m.end()
            while pos < len(body) and body[pos].isspace():
                pos += 1
        size = n or max([p for c in cycles for p in c], default=1)
        flat = [p for c in cycles for p in c]
        if len(set(flat)) != len(flat) or any(p < 1 or p > size for p in flat):
            raise ParseError("cycles must be disjoint and inside 1..n", line, column)
        return Permutation.from_cycles(size, cycles)
    try:
        images = tuple(int(p) for p in body.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"malformed permutation {body!r}", line, column)
    if n is not None and len(images) != n:
        raise ParseError(f"expected {n} images, found {len(images)}", line, column)
    try:
        return Permutation(images)
    except ValueError as err:
        raise ParseError(str(err), line, column)
