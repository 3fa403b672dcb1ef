"""Certified evaluation, nearest-integer reduction, and the finite
standard-part estimator.

The standard-part map of the nonstandard model is replaced by cluster
analysis on a finite window: the dominant cluster (by tail density) is
reported as the limit only when its density clears the configured
threshold; otherwise the full cluster report is returned as Ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .config import Config, DEFAULT_CONFIG
from .errors import PrecisionInsufficient
from .intervals import Interval
from .oracles import RealOracle

__all__ = ["PrecisionReal", "StdVerdict", "evaluate", "nearest_integer",
           "std_estimate"]

# A PrecisionReal is an exact-rational interval; see intervals.Interval.
PrecisionReal = Interval


def evaluate(oracle: RealOracle, precision: int) -> PrecisionReal:
    """Interval of width <= 2^-precision containing the oracle's value."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    return oracle.eval(precision)


def nearest_integer(x: PrecisionReal) -> Tuple[int, PrecisionReal]:
    """Round to the nearest integer with the round-half-even tie policy.

    Requires x.width < 1/4.  Raises PrecisionInsufficient when the interval
    straddles a half-integer and the tie cannot be decided.
    """
    if x.width >= Fraction(1, 4):
        raise PrecisionInsufficient("interval too wide for nearest-integer")
    half = Fraction(1, 2)
    if x.is_point and (x.lo - half).denominator == 1:
        # exact half-integer: round half to even
        below = int(x.lo - half)
        n = below if below % 2 == 0 else below + 1
        return n, x - n
    n_lo = _round_half_even(x.lo)
    n_hi = _round_half_even(x.hi)
    if n_lo != n_hi:
        raise PrecisionInsufficient(
            f"interval {x} straddles a rounding boundary")
    return n_lo, x - n_lo


def _round_half_even(q: Fraction) -> int:
    below = q.__floor__()
    rem = q - below
    if rem < Fraction(1, 2):
        return below
    if rem > Fraction(1, 2):
        return below + 1
    return below if below % 2 == 0 else below + 1


@dataclass
class StdVerdict:
    """Finite stand-in for the standard part of a bounded hypersequence."""

    limit: Optional[PrecisionReal]          # None <=> Ambiguous
    clusters: List[Tuple[Fraction, float]]  # (cluster center, tail density)
    rho: float

    @property
    def is_ambiguous(self) -> bool:
        return self.limit is None

    def to_json(self) -> dict:
        return {
            "limit": None if self.limit is None else
            {"lo": str(self.limit.lo), "hi": str(self.limit.hi)},
            "clusters": [{"center": str(c), "density": d}
                         for c, d in self.clusters],
            "rho": self.rho,
        }


def std_estimate(values: List[PrecisionReal], rho: Optional[float] = None,
                 config: Config = DEFAULT_CONFIG,
                 gap: Optional[Fraction] = None) -> StdVerdict:
    """Cluster the values and report the dominant limit point, if any.

    Clusters are formed by splitting the sorted midpoints at gaps larger
    than `gap` (default: max(interval widths, 2^-precision/4) scaled up to
    a minimal resolution of 1/64).  Density of a cluster is the fraction
    of tail values (second half of the window) falling in it; the cluster
    wins only when its tail density >= rho.
    """
    if not values:
        raise ValueError("empty value list")
    rho = config.rho if rho is None else rho
    if gap is None:
        wmax = max(v.width for v in values)
        gap = max(wmax * 4, Fraction(1, 64))
    order = sorted(range(len(values)), key=lambda i: values[i].mid)
    clusters: List[List[int]] = [[order[0]]]
    for idx in order[1:]:
        if values[idx].mid - values[clusters[-1][-1]].mid <= gap:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    tail_start = len(values) // 2
    report = []
    best = None
    for members in clusters:
        center = sum(values[i].mid for i in members) / len(members)
        tail_hits = sum(1 for i in members if i >= tail_start)
        density = tail_hits / (len(values) - tail_start)
        report.append((center, density))
        if best is None or density > report[best][1]:
            best = len(report) - 1
    limit = None
    if report[best][1] >= rho:
        tail_members = [i for i in clusters[best] if i >= tail_start] \
            or clusters[best]
        limit = Interval.hull(values[i] for i in tail_members)
    return StdVerdict(limit=limit, clusters=report, rho=rho)
