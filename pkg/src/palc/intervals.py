"""Exact rationals and closed probability intervals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .errors import EmptyIntersection

ZERO = mpq(0)
ONE = mpq(1)

_NUMBER = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$|^\s*(\d+(?:\.\d*)?|\.\d+)\s*$")


def Q(x, den=None) -> mpq:
    """Exact rational from an int, a ratio, a Fraction or a decimal string.

    Floats are rejected: ``0.95`` must arrive as the string ``"0.95"``.
    """
    if den is not None:
        return mpq(x, den)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        m = _NUMBER.match(x)
        if not m:
            raise ValueError(f"not a number: {x!r}")
        if m.group(1) is not None:
            if int(m.group(2)) == 0:
                raise ValueError(f"zero denominator: {x!r}")
            return mpq(int(m.group(1)), int(m.group(2)))
        f = Fraction(m.group(3))
        return mpq(f.numerator, f.denominator)
    return mpq(x)


def fmt(x) -> str:
    """``a/b`` text of a rational (plain integer when the denominator is 1)."""
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: mpq
    hi: mpq

    def __post_init__(self):
        lo, hi = Q(self.lo), Q(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise ValueError(f"invalid probability interval [{fmt(lo)}, {fmt(hi)}]")

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def complement(self) -> "Interval":
        """Range of the complementary ratio: ``[1 - hi, 1 - lo]``."""
        return Interval(ONE - self.hi, ONE - self.lo)

    def __str__(self) -> str:
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"

    def decimal(self, places: int = 4) -> str:
        return f"[{float(self.lo):.{places}f}, {float(self.hi):.{places}f}]"


UNIT = Interval(ZERO, ONE)


def interval_intersect(a: Interval, b: Interval) -> Interval:
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo > hi:
        raise EmptyIntersection(a, b)
    return Interval(lo, hi)
