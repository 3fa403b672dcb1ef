"""Finite-prefix models of the diophantine approximation group of a real
number: construction from convergents, membership verdicts with decay
certificates, error profiles, duality, the rational ideal law, the circle
residue map, and the hat-generator construction.

A finite prefix can never decide membership in the full nonstandard group,
so membership is a three-way verdict: CertifiedMember is reserved for
exact-rational divisibility and construction-backed sequences; empirical
verdicts carry their tolerance and fitted decay; NotMember always carries
an interval-certified witness index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .config import Config, DEFAULT_CONFIG
from .errors import (LengthMismatch, PrecisionInsufficient, RationalTheta,
                     SearchExhausted, WitnessNotFound, ZeroTheta)
from .intervals import Interval
from .numeric_core import StdVerdict, nearest_integer, std_estimate
from .oracles import InverseOracle, MulRationalOracle, RealOracle

__all__ = [
    "ApproxSequence", "ErrorProfile", "MembershipVerdict",
    "NumeratorConstraint", "convergents", "error_term", "membership",
    "combine", "dual", "scaling_witness", "circle_part", "hat_element",
    "pair_form", "from_convergents",
]


# ---------------------------------------------------------------------------
# data types


@dataclass
class ApproxSequence:
    """Finite prefix of an integer sequence with its dual (numerator) track."""

    entries: List[int]
    duals: Optional[List[int]] = None
    provenance: str = "UserSupplied"
    decay_certificate: Optional[Tuple[float, float]] = None  # (C, lam)

    def __post_init__(self):
        self.entries = [int(n) for n in self.entries]
        if self.duals is not None:
            self.duals = [int(n) for n in self.duals]
            if len(self.duals) != len(self.entries):
                raise LengthMismatch("duals length != entries length")

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> dict:
        return {"entries": [str(n) for n in self.entries],
                "duals": None if self.duals is None else
                [str(n) for n in self.duals],
                "provenance": self.provenance,
                "decay_certificate": self.decay_certificate}


@dataclass
class ErrorProfile:
    """Per-index error intervals eps_i = n_i*theta - n_i_perp plus decay fit."""

    epsilons: List[Interval]
    fit: Optional[Tuple[float, float, float]] = None  # (C, lam, r2)
    all_zero: bool = False

    @property
    def has_certificate(self) -> bool:
        return self.fit is not None and self.fit[1] > 0

    def to_json(self) -> dict:
        return {"epsilons": [{"lo": str(e.lo), "hi": str(e.hi)}
                             for e in self.epsilons],
                "fit": self.fit, "all_zero": self.all_zero}


@dataclass
class MembershipVerdict:
    status: str                    # CertifiedMember | EmpiricalMember | NotMember
    tau: Fraction
    lam: Optional[float] = None
    witness_index: Optional[int] = None
    witness_reason: str = ""
    duals: Optional[List[int]] = None
    profile: Optional[ErrorProfile] = None

    @property
    def is_member(self) -> bool:
        return self.status in ("CertifiedMember", "EmpiricalMember")

    def to_json(self) -> dict:
        return {"status": self.status, "tau": str(self.tau),
                "lambda": self.lam, "witness_index": self.witness_index,
                "witness_reason": self.witness_reason,
                "duals": None if self.duals is None else
                [str(n) for n in self.duals]}


@dataclass(frozen=True)
class NumeratorConstraint:
    """Constraint on duals/entries defining the [R|S] variants.

    kind: 'integers' | 'inverted_scale' (duals in (1/n)Z) |
    'divisible_by_all' (duals divisible by every m <= B) |
    'scaled_ideal' (entries in nZ).
    """

    kind: str = "integers"
    n: int = 1
    bound: int = 10

    def dual_denominator(self) -> int:
        return self.n if self.kind == "inverted_scale" else 1

    def dual_multiple(self) -> int:
        if self.kind == "divisible_by_all":
            return math.lcm(*range(1, self.bound + 1))
        return 1


INTEGERS = NumeratorConstraint()


# ---------------------------------------------------------------------------
# convergents


def convergents(theta: RealOracle, k: int,
                config: Config = DEFAULT_CONFIG) -> Tuple[List[Tuple[int, int]], bool]:
    """First k continued-fraction convergents (p, q) of theta.

    Returns (pairs, terminated); a rational theta terminates at its exact
    fraction.  Certified by computing the common CF prefix of the two
    interval endpoints at escalating precision.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if theta.is_rational:
        cf = _cf_of_fraction(theta.rational_value())
        pairs = _convergents_from_cf(cf)[:k]
        return pairs, len(pairs) == len(_convergents_from_cf(cf))
    prec = config.precision
    while True:
        iv = theta.eval(prec)
        cf_lo = _cf_of_fraction(iv.lo, limit=k + 2)
        cf_hi = _cf_of_fraction(iv.hi, limit=k + 2)
        common = []
        for a, b in zip(cf_lo, cf_hi):
            if a == b:
                common.append(a)
            else:
                break
        if len(common) >= k:
            return _convergents_from_cf(common[:k]), False
        if prec >= config.precision_cap:
            raise PrecisionInsufficient(
                f"cannot certify {k} partial quotients at cap")
        prec *= 2


def _cf_of_fraction(x: Fraction, limit: Optional[int] = None) -> List[int]:
    out = []
    while limit is None or len(out) < limit:
        a = x.__floor__()
        out.append(a)
        x = x - a
        if x == 0:
            break
        x = 1 / x
    return out


def _convergents_from_cf(cf: Sequence[int]) -> List[Tuple[int, int]]:
    pairs = []
    p0, q0, p1, q1 = 1, 0, 0, 1  # p_{-1}/q_{-1}, p_{-2}/q_{-2} style seeds
    for a in cf:
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        pairs.append((p0, q0))
    return pairs


def from_convergents(theta: RealOracle, k: int,
                     config: Config = DEFAULT_CONFIG) -> ApproxSequence:
    """Member sequence built from convergent denominators (duals = numerators)."""
    pairs, _ = convergents(theta, k, config)
    entries = [q for _, q in pairs]
    duals = [p for p, _ in pairs]
    return ApproxSequence(entries=entries, duals=duals,
                          provenance="Constructed(convergents)",
                          decay_certificate=(1.0, 1.0))


# ---------------------------------------------------------------------------
# error profiles


def _compute_duals(theta: RealOracle, entries: Sequence[int],
                   constraint: NumeratorConstraint = INTEGERS,
                   config: Config = DEFAULT_CONFIG) -> List[int]:
    """Duals as nearest (constrained) numerators to theta * n_i."""
    denom = constraint.dual_denominator()
    mult = constraint.dual_multiple()
    duals = []
    for n in entries:
        prec = config.precision
        while True:
            iv = theta.eval(prec) * Fraction(n * denom, mult)
            try:
                m, _ = nearest_integer(iv)
                break
            except PrecisionInsufficient:
                if prec >= config.precision_cap:
                    raise
                prec *= 2
        duals.append(m * mult)  # stored in units of 1/denom
    return duals


def error_term(theta: RealOracle, seq: ApproxSequence,
               constraint: NumeratorConstraint = INTEGERS,
               config: Config = DEFAULT_CONFIG) -> ErrorProfile:
    """eps_i = theta*n_i - dual_i as certified intervals, plus a decay fit."""
    if not seq.entries:
        raise ValueError("empty sequence")
    duals = seq.duals
    if duals is None:
        duals = _compute_duals(theta, seq.entries, constraint, config)
    denom = constraint.dual_denominator()
    eps = []
    for n, m in zip(seq.entries, duals):
        iv = theta.eval(config.precision) * Fraction(n) - Fraction(m, denom)
        eps.append(iv)
    return _profile_from_eps(eps)


def _profile_from_eps(eps: List[Interval]) -> ErrorProfile:
    nonzero = [(i, e) for i, e in enumerate(eps)
               if not (e.is_point and e.lo == 0)]
    all_zero = not nonzero
    fit = None
    if len(nonzero) >= 3:
        pts = []
        for i, e in enumerate(eps):
            mag = max(abs(e.lo), abs(e.hi))
            if mag > 0:
                pts.append((i, math.log2(float(mag)) if float(mag) > 0
                            else -4096.0))
        if len(pts) >= 3:
            fit = _linear_fit(pts)
    return ErrorProfile(epsilons=eps, fit=fit, all_zero=all_zero)


def _linear_fit(points: List[Tuple[int, float]]):
    """Least squares y = log2C - lam*x; returns (C, lam, r2)."""
    n = len(points)
    sx = sum(p[0] for p in points)
    sy = sum(p[1] for p in points)
    sxx = sum(p[0] ** 2 for p in points)
    sxy = sum(p[0] * p[1] for p in points)
    denom = n * sxx - sx * sx
    if denom == 0:
        return None
    slope = (n * sxy - sx * sy) / denom
    intercept = (sy - slope * sx) / n
    mean_y = sy / n
    ss_tot = sum((y - mean_y) ** 2 for _, y in points)
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in points)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    lam = -slope
    return (2.0 ** intercept, lam, r2)


# ---------------------------------------------------------------------------
# membership


def membership(theta: RealOracle, seq: ApproxSequence,
               constraint: NumeratorConstraint = INTEGERS,
               tau: Optional[Fraction] = None,
               config: Config = DEFAULT_CONFIG) -> MembershipVerdict:
    """Membership verdict for the finite-prefix model of *Z(theta).

    Exact rational theta: certified ideal law (b | n for theta = a/b in
    lowest terms, under the constraint's divisibility filters).  Otherwise
    interval errors with certified witnesses and decay-fit certificates.
    """
    tau = Fraction(tau) if tau is not None else config.tau
    if tau <= 0:
        raise ValueError("tau must be positive")
    if not seq.entries:
        raise ValueError("empty sequence")

    if constraint.kind == "scaled_ideal":
        for i, n in enumerate(seq.entries):
            if n % constraint.n != 0:
                return MembershipVerdict(
                    status="NotMember", tau=tau, witness_index=i,
                    witness_reason=f"entry not in {constraint.n}Z")

    if theta.is_rational:
        return _rational_membership(theta.rational_value(), seq, constraint, tau)

    duals = seq.duals
    if duals is None:
        duals = _compute_duals(theta, seq.entries, constraint, config)
    denom = constraint.dual_denominator()
    mult = constraint.dual_multiple()
    for i, m in enumerate(duals):
        if m % mult != 0:
            return MembershipVerdict(
                status="NotMember", tau=tau, witness_index=i,
                witness_reason=f"dual not divisible by lcm(1..{constraint.bound})")

    eps = [theta.eval(config.precision) * Fraction(n) - Fraction(m, denom)
           for n, m in zip(seq.entries, duals)]
    profile = _profile_from_eps(eps)

    # construction-backed sequences carry their own decay guarantee
    if seq.decay_certificate is not None and \
            seq.provenance.startswith("Constructed"):
        return MembershipVerdict(status="CertifiedMember", tau=tau,
                                 lam=seq.decay_certificate[1],
                                 duals=duals, profile=profile)

    # empirical membership: fitted decay and a final error within tau
    lam = None
    if profile.fit is not None:
        _, lam, r2 = profile.fit
        if lam >= config.lambda_min and r2 >= config.r2_min and \
                _certified_below(theta, seq.entries[-1], duals[-1],
                                 denom, tau, config):
            return MembershipVerdict(status="EmpiricalMember", tau=tau,
                                     lam=lam, duals=duals, profile=profile)

    witness = _certified_witness(theta, seq.entries, duals, denom, tau,
                                 config)
    if witness is not None:
        return MembershipVerdict(
            status="NotMember", tau=tau, witness_index=witness,
            witness_reason=f"|eps| > {tau} certified",
            duals=duals, profile=profile)
    # every error sits within tau but no decay could be certified: the
    # prefix is consistent with membership, so do not overclaim NotMember
    return MembershipVerdict(status="EmpiricalMember", tau=tau, lam=lam,
                             duals=duals, profile=profile)


def _certified_below(theta: RealOracle, n: int, m: int, denom: int,
                     tau: Fraction, config: Config) -> bool:
    prec = config.precision
    while True:
        a = abs(theta.eval(prec) * Fraction(n) - Fraction(m, denom))
        if a.hi < tau:
            return True
        if a.lo >= tau:
            return False
        if prec >= config.precision_cap:
            raise PrecisionInsufficient(
                f"tau={tau} below achievable interval resolution")
        prec *= 2


def _certified_witness(theta: RealOracle, entries: Sequence[int],
                       duals: Sequence[int], denom: int, tau: Fraction,
                       config: Config) -> Optional[int]:
    for i, (n, m) in enumerate(zip(entries, duals)):
        prec = config.precision
        while True:
            a = abs(theta.eval(prec) * Fraction(n) - Fraction(m, denom))
            if a.lo > tau:
                return i
            if a.hi <= tau:
                break
            if prec >= config.precision_cap:
                raise PrecisionInsufficient(
                    f"tau={tau} below achievable interval resolution")
            prec *= 2
    return None


def _rational_membership(value: Fraction, seq: ApproxSequence,
                         constraint: NumeratorConstraint,
                         tau: Fraction) -> MembershipVerdict:
    a, b = value.numerator, value.denominator
    denom = constraint.dual_denominator()
    mult = constraint.dual_multiple()
    duals = []
    for i, n in enumerate(seq.entries):
        exact = Fraction(n * denom, 1) * value  # candidate dual in (1/denom)Z
        target = exact / mult
        if target.denominator != 1:
            return MembershipVerdict(
                status="NotMember", tau=tau, witness_index=i,
                witness_reason=f"theta*n = {n * value} has no exact dual "
                               f"under constraint {constraint.kind}")
        duals.append(int(target) * mult)
    eps = [Interval.point(0)] * len(seq.entries)
    return MembershipVerdict(status="CertifiedMember", tau=tau, duals=duals,
                             profile=ErrorProfile(epsilons=eps, all_zero=True))


# ---------------------------------------------------------------------------
# group structure


def combine(a: ApproxSequence, b: ApproxSequence,
            coeffs: Tuple[int, int]) -> ApproxSequence:
    """Pointwise integer combination c1*a + c2*b (error adds linearly)."""
    if len(a) != len(b):
        raise LengthMismatch("sequences differ in length")
    c1, c2 = int(coeffs[0]), int(coeffs[1])
    entries = [c1 * x + c2 * y for x, y in zip(a.entries, b.entries)]
    duals = None
    if a.duals is not None and b.duals is not None:
        duals = [c1 * x + c2 * y for x, y in zip(a.duals, b.duals)]
    cert = None
    if a.decay_certificate is not None and b.decay_certificate is not None:
        ca, la = a.decay_certificate
        cb, lb = b.decay_certificate
        cert = (abs(c1) * ca + abs(c2) * cb, min(la, lb))
    return ApproxSequence(entries=entries, duals=duals,
                          provenance="Constructed(combine)",
                          decay_certificate=cert)


def dual(theta: RealOracle, seq: ApproxSequence,
         config: Config = DEFAULT_CONFIG) -> Tuple[ApproxSequence, RealOracle]:
    """Duality: swap entries and duals; the result is bound to 1/theta."""
    if theta.certified_sign() == 0:
        raise ZeroTheta("dual undefined for theta = 0")
    duals = seq.duals
    if duals is None:
        duals = _compute_duals(theta, seq.entries, INTEGERS, config)
    swapped = ApproxSequence(entries=list(duals), duals=list(seq.entries),
                             provenance=seq.provenance,
                             decay_certificate=seq.decay_certificate)
    inv = InverseOracle(theta)
    return swapped, inv


def scaling_witness(theta: RealOracle, seq: ApproxSequence,
                    bound: Optional[int] = None,
                    config: Config = DEFAULT_CONFIG) -> List[int]:
    """Per index, smallest N with ||N * n_i * theta|| > 1/4 (certified).

    Witnesses that scaled copies of a member leave the group; exists only
    for irrational theta.
    """
    if theta.is_rational:
        raise RationalTheta("scaling witnesses require irrational theta")
    bound = bound or config.witness_bound
    quarter = Fraction(1, 4)

    def certified_above(big_n, n):
        prec = config.precision
        while True:
            iv = theta.eval(prec) * Fraction(big_n * n)
            d = iv.dist_to_nearest_int()
            if d.lo > quarter:
                return True
            if d.hi <= quarter:
                return False
            if prec >= config.precision_cap:
                return False
            prec *= 2

    out = []
    for n in seq.entries:
        found = None
        for big_n in range(1, bound + 1):
            if certified_above(big_n, n):
                found = big_n
                break
        if found is None:
            # doubling phase: a nonzero residual below 1/4 lands in
            # (1/4, 1/2] after finitely many doublings
            big_n = 1
            for _ in range(64):
                big_n *= 2
                if big_n > bound and certified_above(big_n, n):
                    found = big_n
                    break
        if found is None:
            raise WitnessNotFound(bound)
        out.append(found)
    return out


def circle_part(theta: RealOracle, seq: ApproxSequence,
                config: Config = DEFAULT_CONFIG) -> StdVerdict:
    """Residue of the sequence on the circle R/Z: std of frac(theta * n_i).

    Members map to 0; the verdict's limit is reported as a representative
    in [-1/2, 1/2) (add 1 for the [0,1) chart).
    """
    if not seq.entries:
        raise ValueError("empty sequence")
    values = []
    for n in seq.entries:
        prec = config.precision
        while True:
            iv = theta.eval(prec) * Fraction(n)
            # signed representative in [-1/2, 1/2): x - round(x)
            try:
                m, resid = nearest_integer(iv)
                values.append(resid)
                break
            except PrecisionInsufficient:
                if prec >= config.precision_cap:
                    raise
                prec *= 2
    return std_estimate(values, config=config)


def hat_element(theta: RealOracle, stages: int,
                tol: Fraction = Fraction(1, 1000),
                config: Config = DEFAULT_CONFIG,
                scan_cap: int = 20_000_000) -> ApproxSequence:
    """Entries 1 + k!*n_{k!} with ||theta/k! + n_{k!}*theta|| small.

    Each entry is congruent to 1 mod every m <= k, yet the sequence
    approximates q*theta for every q = 1..stages.  The search bound is
    strengthened below the classical 1/(k!)^2 so the resulting errors stay
    under tol for all tested q.
    """
    if theta.is_rational:
        raise RationalTheta("hat construction requires irrational theta")
    if stages < 1 or stages > config.hat_cap:
        raise ValueError(f"stages must be in 1..{config.hat_cap}")
    tol = Fraction(tol)
    theta_f = float(theta.eval(96).mid)
    entries = []
    duals = []
    for k in range(1, stages + 1):
        m = math.factorial(k)
        target = min(Fraction(1, m * m), tol / (2 * stages * m))
        n_k = _scan_hat(theta, theta_f, m, target, scan_cap)
        if n_k is None:
            raise SearchExhausted(k, scan_cap)
        entry = 1 + m * n_k
        prec = config.precision
        iv = theta.eval(prec) * Fraction(entry)
        d, resid = nearest_integer(iv)
        entries.append(entry)
        duals.append(d)
    return ApproxSequence(entries=entries, duals=duals,
                          provenance="Constructed(hat)",
                          decay_certificate=(1.0, 1.0))


def _scan_hat(theta: RealOracle, theta_f: float, m: int,
              target: Fraction, cap: int) -> Optional[int]:
    """Smallest |n| with ||theta/m + n*theta|| < target, certified."""
    tf = float(target)
    base = theta_f / m
    for mag in range(0, cap + 1):
        for n in ([0] if mag == 0 else [mag, -mag]):
            if 1 + m * n == 0:
                # the entry 1 + m*n would vanish
                continue
            x = base + n * theta_f
            d = abs(x - round(x))
            if d < 1.5 * tf:
                # certify with intervals
                prec = 128
                while True:
                    iv = theta.eval(prec) * (Fraction(1, m) + n)
                    dd = iv.dist_to_nearest_int()
                    if dd.hi < target:
                        return n
                    if dd.lo >= target:
                        break
                    if prec >= 1 << 16:
                        break
                    prec *= 2
    return None


def pair_form(theta: RealOracle, seq: ApproxSequence,
              config: Config = DEFAULT_CONFIG) -> List[Tuple[int, int]]:
    """Denominator-numerator pairs (n_i, n_i_perp)."""
    duals = seq.duals
    if duals is None:
        duals = _compute_duals(theta, seq.entries, INTEGERS, config)
    return list(zip(seq.entries, duals))
