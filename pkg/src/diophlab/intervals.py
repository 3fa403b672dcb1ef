"""Exact interval arithmetic over rationals.

Every quantity the library cannot represent exactly is carried as a closed
interval [lo, hi] with Fraction endpoints.  All decisions (floors, signs,
comparisons against thresholds) are made only when the interval certifies
them; otherwise PrecisionInsufficient is raised so callers can refine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import PrecisionInsufficient

__all__ = ["Interval", "frac_from_decimal"]


def frac_from_decimal(text: str) -> Fraction:
    """Parse '1.41', '-3', '2/7' into an exact Fraction."""
    text = text.strip()
    return Fraction(text)


@dataclass(frozen=True)
class Interval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @staticmethod
    def hull(items) -> "Interval":
        items = list(items)
        return Interval(min(i.lo for i in items), max(i.hi for i in items))

    # -- basic queries -----------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def width_bits(self) -> float:
        """-log2(width); inf for a point interval."""
        w = self.width
        if w == 0:
            return math.inf
        return -math.log2(float(w)) if w < 1 else -math.log2(w.numerator / w.denominator)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            # allow microscopic disagreement from independent roundings
            raise ValueError("empty intersection")
        return Interval(lo, hi)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        if isinstance(other, Rational):
            q = Fraction(other)
            return Interval(self.lo + q, self.hi + q)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return self + (-other)
        if isinstance(other, Rational):
            return self + (-Fraction(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "Interval":
        if isinstance(other, Interval):
            prods = (self.lo * other.lo, self.lo * other.hi,
                     self.hi * other.lo, self.hi * other.hi)
            return Interval(min(prods), max(prods))
        if isinstance(other, Rational):
            q = Fraction(other)
            if q >= 0:
                return Interval(self.lo * q, self.hi * q)
            return Interval(self.hi * q, self.lo * q)
        return NotImplemented

    __rmul__ = __mul__

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def square(self) -> "Interval":
        a = abs(self)
        return Interval(a.lo * a.lo, a.hi * a.hi)

    def reciprocal(self) -> "Interval":
        if self.contains_zero():
            raise PrecisionInsufficient("reciprocal of interval containing 0")
        return Interval(1 / self.hi, 1 / self.lo)

    # -- certified decisions ----------------------------------------------

    def sign(self) -> int:
        """Certified sign; raises if the interval straddles 0 (non-point)."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.is_point:
            return 0
        raise PrecisionInsufficient("sign undecided")

    def gt(self, x) -> bool:
        """Certified comparison self > x; raises when undecided."""
        x = Fraction(x)
        if self.lo > x:
            return True
        if self.hi <= x:
            return False
        raise PrecisionInsufficient(f"comparison with {x} undecided")

    def lt(self, x) -> bool:
        x = Fraction(x)
        if self.hi < x:
            return True
        if self.lo >= x:
            return False
        raise PrecisionInsufficient(f"comparison with {x} undecided")

    def floor(self) -> int:
        """Certified floor; raises when the interval straddles an integer."""
        flo = self.lo.__floor__()
        fhi = self.hi.__floor__()
        if flo == fhi:
            return flo
        if self.hi == fhi and self.is_point:
            return fhi
        raise PrecisionInsufficient("floor undecided")

    def frac(self) -> "Interval":
        """Fractional part, certified via floor."""
        n = self.floor()
        return self - Fraction(n)

    def dist_to_nearest_int(self) -> "Interval":
        """Interval enclosing the distance from the value to the nearest integer.

        Total (never raises): across a half-integer the distance peaks at 1/2.
        """
        half = Fraction(1, 2)
        n1 = (self.lo + half).__floor__()
        n2 = (self.hi + half).__floor__()
        if n1 == n2:
            return abs(self - Fraction(n1))
        if self.width >= 1:
            return Interval(Fraction(0), half)
        d_lo = abs(self.lo - n1)
        d_hi = abs(self.hi - n2)
        return Interval(min(d_lo, d_hi), half)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"

    def approx_str(self, digits: int = 12) -> str:
        m = self.mid
        return f"{float(m):.{digits}g}"
