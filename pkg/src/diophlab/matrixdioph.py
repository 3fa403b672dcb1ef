"""Diophantine approximation for real matrices: vector error terms,
membership of integer vector sequences, homogeneous and inhomogeneous
independence via integer kernels, and the closure of the induced
subgroup on the torus.

A real s x r matrix Theta acts on integer column vectors n in Z^r; the
error of a pair (n, n_perp) is eps = Theta n - n_perp in R^s.  Rational
matrices admit exact certificates throughout (kernels, torus annihilator);
irrational entries fall back to interval certification and empirical
relation search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .config import Config, DEFAULT_CONFIG
from .errors import (DimensionMismatch, LengthMismatch,
                     PrecisionInsufficient)
from .intervals import Interval
from .lattice import (hermite_normal_form, integer_kernel, integer_relation,
                      RelationCertificate)
from .numeric_core import nearest_integer
from .oracles import RationalOracle, RealOracle

__all__ = [
    "RealMatrix", "VectorApproxSequence", "VectorMembershipVerdict",
    "TorusClosure", "error_vector", "vector_membership",
    "homogeneous_independence", "inhomogeneous_independence",
    "torus_closure",
]


@dataclass
class RealMatrix:
    """Matrix of real oracles, stored row-major."""

    rows: List[List[RealOracle]]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise DimensionMismatch("matrix must be nonempty")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise DimensionMismatch("ragged matrix")

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    @property
    def is_rational(self) -> bool:
        return all(o.is_rational for row in self.rows for o in row)

    def rational_rows(self) -> List[List[Fraction]]:
        return [[o.rational_value() for o in row] for row in self.rows]

    def eval(self, precision: int) -> List[List[Interval]]:
        return [[o.eval(precision) for o in row] for row in self.rows]

    @classmethod
    def from_rationals(cls, rows: Sequence[Sequence[Fraction]]) -> "RealMatrix":
        return cls([[RationalOracle(Fraction(x)) for x in row]
                    for row in rows])


@dataclass
class VectorApproxSequence:
    """Finite prefix of a sequence of integer vectors in Z^r with duals in Z^s."""

    vectors: List[List[int]]
    duals: Optional[List[List[int]]] = None

    def __post_init__(self):
        if not self.vectors:
            raise ValueError("empty sequence")
        r = len(self.vectors[0])
        for v in self.vectors:
            if len(v) != r:
                raise DimensionMismatch("ragged vector sequence")
        if self.duals is not None and len(self.duals) != len(self.vectors):
            raise LengthMismatch("duals length != vectors length")

    def __len__(self):
        return len(self.vectors)


@dataclass
class VectorMembershipVerdict:
    status: str            # CertifiedMember | EmpiricalMember | NotMember
    tau: Fraction
    witness: Optional[Tuple[int, int]] = None   # (index, coordinate)
    duals: Optional[List[List[int]]] = None

    @property
    def is_member(self) -> bool:
        return self.status != "NotMember"

    def to_json(self) -> dict:
        return {"status": self.status, "tau": str(self.tau),
                "witness": self.witness,
                "duals": None if self.duals is None else
                [[str(x) for x in v] for v in self.duals]}


@dataclass
class TorusClosure:
    """Closure of {Theta n mod 1 : n in Z^r} inside the torus T^s.

    kind: FullTorus | FiniteGroup | SubtorusCoset.  The annihilator rows
    span {m in Z^s : m^T Theta in Z^r}; for FiniteGroup the order is the
    index of the rational lattice generated by the columns and Z^s.
    """

    kind: str
    dimension: int
    order: Optional[int] = None
    annihilator: Optional[List[List[int]]] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "dimension": self.dimension,
                "order": None if self.order is None else str(self.order),
                "annihilator": self.annihilator}


# ---------------------------------------------------------------------------
# errors and membership


def error_vector(theta: RealMatrix, vector: Sequence[int],
                 dual: Optional[Sequence[int]] = None,
                 config: Config = DEFAULT_CONFIG
                 ) -> Tuple[List[Interval], List[int]]:
    """(eps, dual) for a single integer vector; dual defaults to nearest."""
    s, r = theta.shape
    if len(vector) != r:
        raise DimensionMismatch(f"vector length {len(vector)} != {r}")
    if dual is not None and len(dual) != s:
        raise DimensionMismatch(f"dual length {len(dual)} != {s}")
    prec = config.precision
    while True:
        grid = theta.eval(prec)
        prods = []
        for i in range(s):
            acc = Interval.point(0)
            for j in range(r):
                acc = acc + grid[i][j] * Fraction(vector[j])
            prods.append(acc)
        if dual is not None:
            out_dual = [int(x) for x in dual]
            eps = [p - Fraction(d) for p, d in zip(prods, out_dual)]
            return eps, out_dual
        try:
            pairs = [nearest_integer(p) for p in prods]
        except PrecisionInsufficient:
            if prec >= config.precision_cap:
                raise
            prec *= 2
            continue
        return [resid for _, resid in pairs], [m for m, _ in pairs]


def vector_membership(theta: RealMatrix, seq: VectorApproxSequence,
                      tau: Optional[Fraction] = None,
                      config: Config = DEFAULT_CONFIG) -> VectorMembershipVerdict:
    """Membership of a vector sequence: every coordinate error within tau.

    Rational Theta gives an exact verdict (all errors must vanish);
    otherwise interval certification with a (index, coordinate) witness.
    """
    tau = Fraction(tau) if tau is not None else config.tau
    if theta.is_rational:
        rows = theta.rational_rows()
        duals = []
        for idx, v in enumerate(seq.vectors):
            dv = []
            for i, row in enumerate(rows):
                val = sum(row[j] * v[j] for j in range(len(v)))
                if val.denominator != 1:
                    return VectorMembershipVerdict(
                        status="NotMember", tau=tau, witness=(idx, i))
                dv.append(int(val))
            duals.append(dv)
        return VectorMembershipVerdict(status="CertifiedMember", tau=tau,
                                       duals=duals)

    duals_out = []
    for idx, v in enumerate(seq.vectors):
        dual = seq.duals[idx] if seq.duals is not None else None
        eps, dv = error_vector(theta, v, dual, config)
        prec = config.precision
        while True:
            bad = None
            undecided = False
            for i, e in enumerate(eps):
                a = abs(e)
                if a.lo > tau:
                    bad = i
                    break
                if a.hi > tau and not a.is_point:
                    undecided = True
            if bad is not None:
                return VectorMembershipVerdict(status="NotMember", tau=tau,
                                               witness=(idx, bad))
            if not undecided:
                break
            if prec >= config.precision_cap:
                raise PrecisionInsufficient("tau undecidable at cap")
            prec *= 2
            eps, dv = _eval_errors(theta, v, dv, prec)
        duals_out.append(dv)
    return VectorMembershipVerdict(status="EmpiricalMember", tau=tau,
                                   duals=duals_out)


def _eval_errors(theta: RealMatrix, vector: Sequence[int],
                 dual: Sequence[int], precision: int):
    grid = theta.eval(precision)
    s, r = theta.shape
    eps = []
    for i in range(s):
        acc = Interval.point(0)
        for j in range(r):
            acc = acc + grid[i][j] * Fraction(vector[j])
        eps.append(acc - Fraction(dual[i]))
    return eps, list(dual)


# ---------------------------------------------------------------------------
# independence


def homogeneous_independence(theta: RealMatrix,
                             config: Config = DEFAULT_CONFIG
                             ) -> Tuple[bool, List[RelationCertificate]]:
    """Integer relations among the columns of (Theta ; I_r) restricted to
    the Theta block: nonzero n with Theta n = 0 (exact for rational Theta,
    otherwise lattice search per row stacked as a joint relation).

    Returns (independent, certificates); certificates are per-row when
    empirical, a kernel basis encoding when exact.
    """
    s, r = theta.shape
    if theta.is_rational:
        rows = theta.rational_rows()
        den = math.lcm(*[x.denominator for row in rows for x in row])
        int_rows = [[int(x * den) for x in row] for row in rows]
        # right kernel of the s x r integer matrix = left kernel of transpose
        transpose = [[int_rows[i][j] for i in range(s)] for j in range(r)]
        kernel = integer_kernel(transpose)
        certs = [RelationCertificate(vector=list(k), status="ExactVerified",
                                     height=max(abs(x) for x in k),
                                     note="kernel vector: Theta n = 0")
                 for k in kernel]
        if not certs:
            certs = [RelationCertificate(
                vector=None, status="NoneUpTo",
                height_bound=config.height_bound,
                note="exact kernel is trivial")]
        return (not kernel), certs

    # irrational: a relation must hold in every row simultaneously; search
    # relations of row 1, then check the survivors against the other rows
    if r == 1:
        # single column: a nonzero kernel vector forces every entry to be 0
        for i in range(s):
            if theta.rows[i][0].certified_sign() != 0:
                return True, [RelationCertificate(
                    vector=None, status="NoneUpTo",
                    height_bound=config.height_bound,
                    note="single nonzero column has trivial kernel")]
        return False, [RelationCertificate(
            vector=[1], status="ExactVerified", height=1,
            note="zero column")]
    certs = []
    first = integer_relation(list(theta.rows[0]), config)
    if first.vector is None:
        return True, [first]
    candidate = first.vector
    for i in range(1, s):
        prec = config.precision * 2
        grid = [o.eval(prec) for o in theta.rows[i]]
        acc = Interval.point(0)
        for j in range(r):
            acc = acc + grid[j] * Fraction(candidate[j])
        if not acc.contains_zero():
            return True, [RelationCertificate(
                vector=None, status="NoneUpTo",
                height_bound=config.height_bound,
                note=f"row-1 relation fails in row {i + 1}")]
        certs.append(first)
    return False, certs or [first]


def inhomogeneous_independence(theta: RealMatrix,
                               config: Config = DEFAULT_CONFIG
                               ) -> Tuple[bool, List[RelationCertificate]]:
    """Relations of the extended system [Theta | I]: nonzero (n, m) with
    Theta n = m, i.e. integer relations among each row's entries and 1.
    Exact for rational Theta (always dependent unless r = 0), else search.
    """
    s, r = theta.shape
    if theta.is_rational:
        rows = theta.rational_rows()
        # n = (den, 0, .., 0) with den clearing row denominators always works
        den = math.lcm(*[x.denominator for row in rows for x in row])
        n = [den] + [0] * (r - 1)
        m = [int(rows[i][0] * den) for i in range(s)]
        cert = RelationCertificate(vector=n + m, status="ExactVerified",
                                   height=max(abs(x) for x in n + m),
                                   note="rational matrix: Theta n integral")
        return False, [cert]

    ones = RationalOracle(Fraction(1))
    certs = []
    independent = True
    for i in range(s):
        cert = integer_relation(list(theta.rows[i]) + [ones], config)
        if cert.vector is None:
            certs.append(cert)
            continue
        # the same n must make every other row integral as well
        n = cert.vector[:r]
        m = {i: -cert.vector[r]}
        prec = config.precision * 2
        refuted = False
        for i2 in range(s):
            if i2 == i:
                continue
            acc = Interval.point(0)
            for j in range(r):
                acc = acc + theta.rows[i2][j].eval(prec) * Fraction(n[j])
            nearest = (acc + Fraction(1, 2)).floor()
            if not (acc - nearest).contains_zero():
                refuted = True
                break
            m[i2] = nearest
        if refuted:
            certs.append(RelationCertificate(
                vector=None, status="NoneUpTo",
                height_bound=cert.height_bound or config.height_bound,
                note="row relation fails in other rows"))
            continue
        vec = list(n) + [m[i2] for i2 in range(s)]
        status = cert.status if s == 1 else "Empirical"
        certs.append(RelationCertificate(
            vector=vec, status=status,
            height=max(abs(x) for x in vec)))
        independent = False
    return independent, certs


# ---------------------------------------------------------------------------
# torus closure


def torus_closure(theta: RealMatrix,
                  config: Config = DEFAULT_CONFIG) -> TorusClosure:
    """Closure of the projected column group on T^s via the annihilator
    lattice {m in Z^s : m^T Theta in Z^r}.

    Rank 0 annihilator: the group is dense (FullTorus).  Full rank s:
    finite subgroup whose order is the lattice index.  Otherwise a finite
    union of subtorus cosets of dimension s - rank.
    """
    s, r = theta.shape
    if theta.is_rational:
        ann = _rational_annihilator(theta.rational_rows(), s, r)
    else:
        ann = _empirical_annihilator(theta, config)
    rank = len(ann)
    if rank == 0:
        return TorusClosure(kind="FullTorus", dimension=s)
    if rank == s:
        order = _finite_order(theta, ann)
        return TorusClosure(kind="FiniteGroup", dimension=0, order=order,
                            annihilator=ann)
    return TorusClosure(kind="SubtorusCoset", dimension=s - rank,
                        annihilator=ann)


def _rational_annihilator(rows: List[List[Fraction]], s: int,
                          r: int) -> List[List[int]]:
    """Basis of {m in Z^s : m^T Theta in Z^r} via kernels mod denominators.

    With common denominator D (Theta = A/D entrywise), m works iff
    m^T A = 0 mod D; solve by left kernel of the stacked matrix [A ; D*I].
    """
    den = math.lcm(*[x.denominator for row in rows for x in row])
    a_rows = [[int(x * den) for x in row] for row in rows]  # s x r, integer
    stacked = [a_rows[i] for i in range(s)]
    stacked += [[den if j == i else 0 for j in range(r)] for i in range(r)]
    kernel = integer_kernel(stacked)  # rows (m | k) with m^T A + k*D = 0
    basis = [k[:s] for k in kernel]
    basis = [b for b in basis if any(b)]
    return _row_reduce_basis(basis, s)


def _empirical_annihilator(theta: RealMatrix,
                           config: Config) -> List[List[int]]:
    """Relations m^T Theta in Z^r found column by column, intersected."""
    s, r = theta.shape
    one = RationalOracle(Fraction(1))
    # for each column j find relations among (theta_1j, .., theta_sj, 1)
    basis: Optional[List[List[int]]] = None
    for j in range(r):
        col = [theta.rows[i][j] for i in range(s)]
        found: List[List[int]] = []
        cert = integer_relation(col + [one], config)
        if cert.vector is not None:
            found.append(cert.vector[:s])
        col_basis = _row_reduce_basis([f for f in found if any(f)], s)
        if basis is None:
            basis = col_basis
        else:
            basis = _intersect_lattices(basis, col_basis, s)
        if not basis:
            return []
    return basis or []


def _row_reduce_basis(rows: List[List[int]], width: int) -> List[List[int]]:
    if not rows:
        return []
    h = hermite_normal_form([list(r) for r in rows])
    return h[:width]


def _intersect_lattices(a: List[List[int]], b: List[List[int]],
                        width: int) -> List[List[int]]:
    """Intersection of the row lattices of a and b (Zassenhaus style)."""
    if not a or not b:
        return []
    big = [row + row for row in a] + [row + [0] * width for row in b]
    kernel = integer_kernel(big)
    out = []
    for coeffs in kernel:
        vec = [0] * width
        for c, row in zip(coeffs[:len(a)], a):
            for j in range(width):
                vec[j] += c * row[j]
        if any(vec):
            out.append(vec)
    return _row_reduce_basis(out, width)


def _finite_order(theta: RealMatrix, ann: List[List[int]]) -> int:
    """Order of the finite image group: index [Z^s : L] where L is the
    lattice of integer vectors congruent to some Theta n.

    For rational Theta = A/D the image is generated by columns of A/D and
    Z^s; the order is D^s / |det of the HNF of [A^T ; D*I]| inverted, i.e.
    the index of the generated lattice in (1/D)Z^s scaled back.
    """
    rows = theta.rational_rows()
    s = len(rows)
    r = len(rows[0])
    den = math.lcm(*[x.denominator for row in rows for x in row])
    a_cols = [[int(rows[i][j] * den) for i in range(s)] for j in range(r)]
    gens = a_cols + [[den if i == k else 0 for i in range(s)]
                     for k in range(s)]
    nz = hermite_normal_form(gens)
    det = 1
    for i, row in enumerate(nz):
        det *= row[i]
    # gens span a sublattice of Z^s scaled by den; image order = den^s / det
    return den ** s // abs(det)
