"""Bounded decision procedures for linear and algebraic dependence, the
graph pullback of dependence relations under the exponential, and
consistency harnesses for the classical transcendence statements.

Nothing here proves independence: the vocabulary is Holds (with a
verified certificate) or NotDetectedUpTo (with the bounds used).  The
harnesses compare premise and conclusion relations at the given bounds
and can at most flag a counterexample candidate for human re-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .config import Config, DEFAULT_CONFIG
from .errors import WrongInstanceShape
from .lattice import RelationCertificate, integer_relation
from .oracles import (ProductOracle, RationalOracle, RealOracle, SurdOracle,
                      exp_of)
from .polyapprox import (IntPolynomial, PolyRelation, algebraic_dependence,
                         minimal_polynomial)

__all__ = [
    "RelationVerdict", "Projection", "PullbackReport", "HarnessReport",
    "ld_check", "ad_check", "graph_pullback", "conjecture_harness",
    "ld_to_ad_certificate", "curated_suite",
]


@dataclass
class RelationVerdict:
    relation: str                  # "LD(Q)" | "LD(Q(sqrt D))" | "AD"
    status: str                    # Holds | NotDetectedUpTo
    certificate: Optional[object] = None    # vectors, pairs, or PolyRelation
    bounds: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == "Holds"

    def to_json(self) -> dict:
        cert = self.certificate
        if isinstance(cert, PolyRelation):
            cert = cert.to_json()
        elif isinstance(cert, RelationCertificate):
            cert = cert.to_json()
        elif isinstance(cert, list):
            cert = [str(x) for x in cert]
        return {"relation": self.relation, "status": self.status,
                "certificate": cert, "bounds": self.bounds}


@dataclass(frozen=True)
class Projection:
    """Index sets picking |I| domain and |J| range coordinates, |I|+|J|=n."""

    dom: Tuple[int, ...]
    ran: Tuple[int, ...]

    def label(self) -> str:
        return f"I={list(self.dom)},J={list(self.ran)}"


# ---------------------------------------------------------------------------
# dependence checks


def ld_check(thetas: Sequence[RealOracle], fld: str = "Q",
             h: Optional[int] = None,
             config: Config = DEFAULT_CONFIG) -> RelationVerdict:
    """Linear dependence over the integers of Q or of a real quadratic field.

    The quadratic case searches relations among the thetas and their
    sqrt(D)-multiples jointly and reassembles the two halves into
    coefficients a_i + b_i*sqrt(D).
    """
    if len(thetas) < 2:
        raise ValueError("need at least two numbers")
    cfg = config.replace(height_bound=h) if h else config
    bounds = {"height_bound": cfg.height_bound}
    if fld == "Q":
        cert = integer_relation(list(thetas), cfg)
        if cert.vector is not None:
            return RelationVerdict(relation="LD(Q)", status="Holds",
                                   certificate=cert, bounds=bounds)
        return RelationVerdict(relation="LD(Q)", status="NotDetectedUpTo",
                               certificate=cert, bounds=bounds)
    d = _parse_quadratic_tag(fld)
    root = SurdOracle(0, 1, 1, d)
    doubled = list(thetas) + [ProductOracle([root, t], [1, 1])
                              for t in thetas]
    cert = integer_relation(doubled, cfg)
    if cert.vector is not None:
        n = len(thetas)
        coeff_pairs = [(cert.vector[i], cert.vector[n + i])
                       for i in range(n)]
        return RelationVerdict(relation=f"LD({fld})", status="Holds",
                               certificate={"pairs": coeff_pairs,
                                            "D": d, "raw": cert.to_json()},
                               bounds=bounds)
    return RelationVerdict(relation=f"LD({fld})", status="NotDetectedUpTo",
                           certificate=cert, bounds=bounds)


def _parse_quadratic_tag(fld: str) -> int:
    text = fld.strip()
    if text.startswith("Q(sqrt") and text.endswith(")"):
        d = int(text[len("Q(sqrt"):-1].strip())
        if d > 1 and math.isqrt(d) ** 2 != d:
            return d
    raise ValueError(f"unsupported field tag {fld!r}")


def ad_check(thetas: Sequence[RealOracle], dmax: Optional[int] = None,
             hmax: Optional[int] = None,
             config: Config = DEFAULT_CONFIG) -> RelationVerdict:
    """Algebraic dependence; an exact algebraic member settles it at once
    through its own minimal polynomial lifted to the full variable set.
    """
    if not thetas:
        raise ValueError("need at least one number")
    dmax = dmax or config.degree_bound
    bounds = {"degree_bound": dmax,
              "height_bound": hmax or config.height_bound}
    for idx, t in enumerate(thetas):
        if t.is_exact_algebraic:
            rel = minimal_polynomial(t, dmax=max(dmax, 2), hmax=hmax,
                                     config=config)
            if rel.found:
                lifted = _lift_univariate(rel.polynomial, len(thetas), idx)
                return RelationVerdict(
                    relation="AD", status="Holds",
                    certificate=PolyRelation(lifted, rel.certificate),
                    bounds=bounds)
    rel = algebraic_dependence(thetas, dmax=dmax, hmax=hmax, config=config)
    if rel.found:
        return RelationVerdict(relation="AD", status="Holds",
                               certificate=rel, bounds=bounds)
    return RelationVerdict(relation="AD", status="NotDetectedUpTo",
                           certificate=rel, bounds=bounds)


def _lift_univariate(p: IntPolynomial, nvars: int, slot: int) -> IntPolynomial:
    coeffs = {}
    for (e,), c in p.coeffs.items():
        exps = [0] * nvars
        exps[slot] = e
        coeffs[tuple(exps)] = c
    return IntPolynomial(nvars, coeffs)


# ---------------------------------------------------------------------------
# graph pullback


@dataclass
class PullbackReport:
    verdict: str                   # Holds | NotDetectedUpTo
    projections: List[Tuple[Projection, RelationVerdict]]
    skipped: List[Projection]
    bounds: dict

    @property
    def holds(self) -> bool:
        return self.verdict == "Holds"

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "projections": [{"projection": p.label(),
                                 "verdict": v.to_json()}
                                for p, v in self.projections],
                "skipped": [p.label() for p in self.skipped],
                "bounds": self.bounds}


def graph_pullback(thetas: Sequence[RealOracle], dmax: Optional[int] = None,
                   hmax: Optional[int] = None,
                   algebraic_instance: bool = False,
                   config: Config = DEFAULT_CONFIG) -> PullbackReport:
    """Algebraic dependence of every projection of (thetas, exp thetas).

    Projections run over all pairs (I, J) with |I| + |J| = n; the overall
    verdict Holds only when every evaluated projection holds.  For
    declared algebraic instances, projections with I and J overlapping
    are skipped (their defining set is empty, so they hold vacuously).
    """
    n = len(thetas)
    if n < 2:
        raise ValueError("need at least two numbers")
    if n > 4:
        raise ValueError("combinatorial cap: n <= 4")
    dmax = dmax or config.degree_bound
    exps = [exp_of(t) for t in thetas]
    results = []
    skipped = []
    all_hold = True
    indices = list(range(n))
    for ksize in range(n + 1):
        for dom in combinations(indices, ksize):
            for ran in combinations(indices, n - ksize):
                proj = Projection(dom=dom, ran=ran)
                if algebraic_instance and set(dom) & set(ran):
                    skipped.append(proj)
                    continue
                vec = [thetas[i] for i in dom] + [exps[j] for j in ran]
                verdict = ad_check(vec, dmax=dmax, hmax=hmax, config=config)
                results.append((proj, verdict))
                if not verdict.holds:
                    all_hold = False
    bounds = {"degree_bound": dmax,
              "height_bound": hmax or config.height_bound}
    return PullbackReport(
        verdict="Holds" if all_hold else "NotDetectedUpTo",
        projections=results, skipped=skipped, bounds=bounds)


# ---------------------------------------------------------------------------
# LD implies AD of the exponentials


def ld_to_ad_certificate(coeffs: Sequence[int]) -> IntPolynomial:
    """Turn an integer linear relation sum c_i theta_i = 0 into the
    multiplicative relation prod_{c_i>0} X_i^{c_i} = prod_{c_j<0} X_j^{-c_j}
    satisfied by X_i = exp(theta_i).
    """
    n = len(coeffs)
    pos = [0] * n
    neg = [0] * n
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i] = c
        elif c < 0:
            neg[i] = -c
    return IntPolynomial(n, {tuple(pos): 1, tuple(neg): -1})


# ---------------------------------------------------------------------------
# harnesses


@dataclass
class HarnessReport:
    name: str
    verdict: str       # Consistent | VacuouslyConsistent | COUNTEREXAMPLE-CANDIDATE
    premise: Optional[RelationVerdict] = None
    conclusion: Optional[object] = None
    note: str = ""

    def to_json(self) -> dict:
        conc = self.conclusion
        if isinstance(conc, (RelationVerdict, PullbackReport)):
            conc = conc.to_json()
        return {"name": self.name, "verdict": self.verdict,
                "premise": None if self.premise is None
                else self.premise.to_json(),
                "conclusion": conc, "note": self.note}


def conjecture_harness(name: str, thetas: Sequence[RealOracle],
                       dmax: Optional[int] = None,
                       hmax: Optional[int] = None,
                       config: Config = DEFAULT_CONFIG) -> HarnessReport:
    """Premise/conclusion consistency check for one named statement.

    A counterexample candidate is only emitted when a verified certificate
    contradicts the statement's implication at the tested bounds; it is a
    request for independent scrutiny, never a claimed disproof.
    """
    if name == "baker":
        return _baker(thetas, hmax, config)
    if name == "lw":
        return _lindemann_weierstrass(thetas, dmax, hmax, config)
    if name == "logconj":
        return _log_conjecture(thetas, dmax, hmax, config)
    if name == "schanuel":
        return _schanuel(thetas, dmax, hmax, config)
    raise ValueError(f"unknown harness {name!r}")


def _require_log_instance(thetas: Sequence[RealOracle], name: str):
    """Each entry must exponentiate to the exact algebraic class."""
    for t in thetas:
        image = exp_of(t)
        if not (image.is_exact_algebraic
                or (t.is_rational and t.rational_value() == 0)):
            raise WrongInstanceShape(
                f"{name} instances need logarithms of algebraic numbers")


def _baker(thetas, hmax, config) -> HarnessReport:
    if len(thetas) < 2:
        raise WrongInstanceShape("baker needs at least two logarithms")
    _require_log_instance(thetas, "baker")
    premise = ld_check(thetas, "Q", h=hmax, config=config)
    if premise.holds:
        return HarnessReport(name="baker", verdict="VacuouslyConsistent",
                             premise=premise,
                             note="Q-linear dependence found; the "
                                  "independence premise fails")
    # conclusion: no algebraic-coefficient dependence either; probe the
    # quadratic extensions as a bounded surrogate for Q-bar
    for d in (2, 3, 5):
        conc = ld_check(thetas, f"Q(sqrt {d})", h=hmax, config=config)
        if conc.holds:
            return HarnessReport(name="baker",
                                 verdict="COUNTEREXAMPLE-CANDIDATE",
                                 premise=premise, conclusion=conc,
                                 note="algebraic relation without a "
                                      "rational one; re-verify by hand")
    return HarnessReport(name="baker", verdict="Consistent", premise=premise,
                         conclusion=None,
                         note="no relation found over Q or probed "
                              "quadratic extensions")


def _lindemann_weierstrass(thetas, dmax, hmax, config) -> HarnessReport:
    for t in thetas:
        if not t.is_exact_algebraic:
            raise WrongInstanceShape(
                "lw instances need exact algebraic inputs")
    premise = ld_check(thetas, "Q", h=hmax, config=config) \
        if len(thetas) >= 2 else None
    if premise is not None and premise.holds:
        return HarnessReport(name="lw", verdict="VacuouslyConsistent",
                             premise=premise,
                             note="inputs linearly dependent over Q")
    conclusion = ad_check([exp_of(t) for t in thetas], dmax=dmax,
                          hmax=hmax, config=config)
    if conclusion.holds:
        return HarnessReport(name="lw", verdict="COUNTEREXAMPLE-CANDIDATE",
                             premise=premise, conclusion=conclusion,
                             note="dependence among exponentials of "
                                  "independent algebraics; re-verify")
    return HarnessReport(name="lw", verdict="Consistent", premise=premise,
                         conclusion=conclusion)


def _log_conjecture(thetas, dmax, hmax, config) -> HarnessReport:
    if len(thetas) < 2:
        raise WrongInstanceShape("logconj needs at least two logarithms")
    _require_log_instance(thetas, "logconj")
    ld = ld_check(thetas, "Q", h=hmax, config=config)
    ad = ad_check(thetas, dmax=dmax, hmax=hmax, config=config)
    if ad.holds and not ld.holds:
        return HarnessReport(name="logconj",
                             verdict="COUNTEREXAMPLE-CANDIDATE",
                             premise=ld, conclusion=ad,
                             note="algebraic but not linear dependence "
                                  "among logarithms; re-verify")
    return HarnessReport(name="logconj", verdict="Consistent", premise=ld,
                         conclusion=ad)


def _schanuel(thetas, dmax, hmax, config) -> HarnessReport:
    if len(thetas) < 2:
        raise WrongInstanceShape("schanuel needs at least two numbers")
    pullback = graph_pullback(thetas, dmax=dmax, hmax=hmax, config=config)
    ld = ld_check(thetas, "Q", h=hmax, config=config)
    if pullback.holds and ld.holds:
        return HarnessReport(name="schanuel", verdict="Consistent",
                             premise=ld, conclusion=pullback,
                             note="full pullback dependence matched by a "
                                  "rational linear relation")
    if pullback.holds and not ld.holds:
        return HarnessReport(name="schanuel",
                             verdict="COUNTEREXAMPLE-CANDIDATE",
                             premise=ld, conclusion=pullback,
                             note="every projection dependent yet no "
                                  "linear relation found; re-verify")
    return HarnessReport(name="schanuel", verdict="VacuouslyConsistent",
                         premise=ld, conclusion=pullback,
                         note="some projection shows no dependence; the "
                              "rigidity premise fails at these bounds")


# ---------------------------------------------------------------------------
# regression suite


def curated_suite() -> List[Tuple[str, List[RealOracle]]]:
    """Twenty named regression instances spanning the four harnesses.

    Every instance is expected to come back Consistent or
    VacuouslyConsistent; a counterexample candidate here is a bug.
    """
    from .oracles import ConstOracle

    def log(q):
        return ConstOracle("log", Fraction(q))

    sqrt2 = SurdOracle(0, 1, 1, 2)
    sqrt3 = SurdOracle(0, 1, 1, 3)
    sqrt8 = SurdOracle(0, 2, 1, 2)
    sqrt5 = SurdOracle(0, 1, 1, 5)
    phi = SurdOracle(1, 1, 2, 5)
    one = RationalOracle(1)
    return [
        ("baker", [log(2), log(3)]),
        ("baker", [log(2), log(5)]),
        ("baker", [log(2), log(3), log(5)]),
        ("baker", [log(2), log(3), log(6)]),
        ("baker", [log(2), log(4)]),
        ("baker", [log(3), log(9), log(5)]),
        ("lw", [one, sqrt2]),
        ("lw", [one, sqrt3]),
        ("lw", [sqrt2, sqrt3]),
        ("lw", [sqrt2, sqrt8]),
        ("lw", [RationalOracle(Fraction(1, 2)),
                RationalOracle(Fraction(1, 3))]),
        ("lw", [phi, sqrt5]),
        ("logconj", [log(2), log(3)]),
        ("logconj", [log(3), log(5)]),
        ("logconj", [log(2), log(8)]),
        ("logconj", [log(2), log(3), log(6)]),
        ("schanuel", [log(2), log(4)]),
        ("schanuel", [log(2), log(3), log(6)]),
        ("schanuel", [sqrt2, sqrt8]),
        ("schanuel", [RationalOracle(Fraction(1, 2)),
                      RationalOracle(Fraction(1, 3))]),
    ]
