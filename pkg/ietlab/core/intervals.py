"""Finite unions of half-open intervals [a, b) with Scalar endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from ietlab.core.scalar import ONE, ZERO, Scalar, as_scalar, compare, format_scalar

Interval = Tuple[Scalar, Scalar]


def _max(a: Scalar, b: Scalar) -> Scalar:
    return a if compare(a, b) >= 0 else b


def _min(a: Scalar, b: Scalar) -> Scalar:
    return a if compare(a, b) <= 0 else b


@dataclass(frozen=True)
class IntervalSet:
    intervals: Tuple[Interval, ...] = ()

    @classmethod
    def of(cls, pairs: Iterable) -> "IntervalSet":
        items = [(as_scalar(a), as_scalar(b)) for a, b in pairs]
        items = [(a, b) for a, b in items if compare(a, b) < 0]
        items.sort(key=lambda ab: ab[0])
        merged = []
        for a, b in items:
            if merged and compare(a, merged[-1][1]) <= 0:
                merged[-1] = (merged[-1][0], _max(merged[-1][1], b))
            else:
                merged.append((a, b))
        return cls(tuple(merged))

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((ZERO, ONE),))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def left(self) -> Scalar:
        return self.intervals[0][0]

    def measure(self) -> Scalar:
        return sum((b - a for a, b in self.intervals), ZERO)

    def contains(self, x) -> bool:
        x = as_scalar(x)
        return any(compare(a, x) <= 0 < compare(b, x) for a, b in self.intervals)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.of(self.intervals + other.intervals)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        while i < len(self.intervals) and j < len(other.intervals):
            a, b = self.intervals[i]
            c, d = other.intervals[j]
            lo, hi = _max(a, c), _min(b, d)
            if compare(lo, hi) < 0:
                out.append((lo, hi))
            if compare(b, d) < 0:
                i += 1
            else:
                j += 1
        return IntervalSet.of(out)

    def complement(self) -> "IntervalSet":
        out, cursor = [], ZERO
        for a, b in self.intervals:
            out.append((cursor, a))
            cursor = b
        out.append((cursor, ONE))
        return IntervalSet.of(out)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersection(other.complement())

    def intersects(self, other: "IntervalSet") -> bool:
        return not self.intersection(other).is_empty

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " ∪ ".join(
            f"[{format_scalar(a)}, {format_scalar(b)})" for a, b in self.intervals
        )
