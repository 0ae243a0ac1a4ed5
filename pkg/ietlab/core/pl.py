"""
Piecewise-affine homeomorphisms of [0, 1) with rational slopes, and conjugation
of IETs by them.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from ietlab.core.gn import GnElement, to_iet
from ietlab.core.iet import Iet, RestrictedRotation, detect_restricted_rotation_product
from ietlab.core.perm import Permutation
from ietlab.core.scalar import ONE, ZERO, Scalar, as_scalar, compare, format_rational, format_scalar
from ietlab.logging import LOGGER
from ietlab.utils.exceptions import (
    InternalVerificationFailed,
    InvalidPlMap,
    NotAnIet,
    NotOfThisFormError,
)

log = LOGGER(__name__)


@dataclass(frozen=True)
class PlMap:
    """x -> slopes[k] * x + intercepts[k] on [breakpoints[k], breakpoints[k + 1])."""

    breakpoints: Tuple[Scalar, ...]
    slopes: Tuple[Fraction, ...]
    intercepts: Tuple[Scalar, ...]

    @classmethod
    def from_pieces(cls, breakpoints: Sequence, slopes: Sequence, intercepts: Sequence) -> "PlMap":
        bps = tuple(as_scalar(b) for b in breakpoints)
        slopes = tuple(Fraction(s) for s in slopes)
        cs = tuple(as_scalar(c) for c in intercepts)
        if not bps or bps[0] != ZERO or not len(bps) == len(slopes) == len(cs):
            raise InvalidPlMap("need breakpoints from 0 and one slope and intercept per piece")
        if any(s <= 0 for s in slopes):
            raise InvalidPlMap("slopes must be positive")
        rights = bps[1:] + (ONE,)
        cursor = ZERO
        for a, b, s, c in zip(bps, rights, slopes, cs):
            if compare(a, b) >= 0:
                raise InvalidPlMap(f"breakpoints must increase strictly below 1 (at {a})")
            if a * s + c != cursor:
                raise InvalidPlMap(f"pieces do not glue at {a}")
            cursor = b * s + c
        if cursor != ONE:
            raise InvalidPlMap("image is not [0, 1)")
        return cls(bps, slopes, cs)

    @classmethod
    def identity(cls) -> "PlMap":
        return cls((ZERO,), (Fraction(1),), (ZERO,))

    @classmethod
    def stretching(cls, supports: Sequence[Tuple[Scalar, Scalar]]) -> "PlMap":
        """Send the i-th of n consecutive intervals affinely onto [(i-1)/n, i/n)."""
        n = len(supports)
        bps, slopes, cs = [], [], []
        for i, (lo, hi) in enumerate(supports):
            length = as_scalar(hi - lo)
            if not length.is_rational:
                raise NotOfThisFormError(
                    f"[{lo}, {hi}) has irrational length; no rational slope normalizes it"
                )
            s = Fraction(1, n) / length.constant
            bps.append(lo)
            slopes.append(s)
            cs.append(Fraction(i, n) - lo * s)
        return cls.from_pieces(bps, slopes, cs)

    def locate(self, x: Scalar) -> int:
        return bisect.bisect_right(self.breakpoints, x) - 1

    def slope_at(self, x: Scalar) -> Fraction:
        return self.slopes[self.locate(x)]

    def evaluate(self, x) -> Scalar:
        x = as_scalar(x)
        k = self.locate(x)
        return x * self.slopes[k] + self.intercepts[k]

    __call__ = evaluate

    def inverse(self) -> "PlMap":
        pieces = sorted(
            ((self.breakpoints[k] * s + c, 1 / s, -c / s) for k, (s, c) in enumerate(zip(self.slopes, self.intercepts))),
            key=lambda p: p[0],
        )
        return PlMap(
            tuple(p[0] for p in pieces),
            tuple(Fraction(p[1]) for p in pieces),
            tuple(p[2] for p in pieces),
        )

    def __str__(self):
        return "; ".join(
            f"[{format_scalar(b)}): {format_rational(s)}x + {format_scalar(c)}"
            for b, s, c in zip(self.breakpoints, self.slopes, self.intercepts)
        )


def conjugate_by_pl(f: Iet, R: PlMap) -> Iet:
    """R o f o R^-1, provided every piece comes out with slope 1."""
    back = R.inverse()
    cuts = set(back.breakpoints)
    cuts.update(R.evaluate(b) for b in f.breakpoints)
    f_inv = f.inverse()
    cuts.update(R.evaluate(f_inv.evaluate(b)) for b in R.breakpoints)
    cuts = sorted(cuts)
    translations = []
    for u, v in zip(cuts, cuts[1:] + [ONE]):
        x = back.evaluate(u)
        y = f.evaluate(x)
        if back.slope_at(u) * R.slope_at(y) != 1:
            raise NotAnIet(
                f"the conjugate has slope {format_rational(back.slope_at(u) * R.slope_at(y))} "
                f"on [{format_scalar(u)}, {format_scalar(v)})",
                (u, v),
            )
        translations.append(R.evaluate(y) - u)
    return Iet.from_pieces(cuts, translations)


def normalize_restricted_rotations(phi: Iet) -> Tuple[PlMap, GnElement]:
    """Conjugate a product of restricted rotations into G_n with sigma = id.

    The i-th invariant piece J_i is stretched onto I_i; its angle scales with
    the slope (1/n)/|J_i|.
    """
    detected = detect_restricted_rotation_product(phi)
    if not isinstance(detected, list):
        raise NotOfThisFormError(str(detected))
    return normalize_pieces(phi, detected)


def normalize_pieces(phi: Iet, pieces: List[RestrictedRotation]) -> Tuple[PlMap, GnElement]:
    R = PlMap.stretching([(p.lo, p.hi) for p in pieces])
    n = len(pieces)
    angles = [p.angle * (Fraction(1, n) / p.length.constant) for p in pieces]
    F = GnElement.make(angles, Permutation.identity(n))
    if conjugate_by_pl(phi, R) != to_iet(F):
        raise InternalVerificationFailed("R o phi o R^-1 does not match the normalized element")
    log.info(f"normalized {n} restricted rotation(s) into G_{n}")
    return R, F
