"""Exact lattice machinery: LLL reduction, Hermite forms, integer kernels,
integer-relation detection, and simultaneous diophantine approximation.

Reduction is exact (integer arithmetic via sympy's ZZ domain LLL); every
relation this module emits is re-verified, symbolically when the inputs
are exact-class and by doubled-precision interval evaluation otherwise.
A NoneUpTo result is a bounded statement, never an independence proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .config import Config, DEFAULT_CONFIG
from .errors import DependentRows, PrecisionInsufficient
from .intervals import Interval
from .oracles import RealOracle

__all__ = [
    "LatticeBasis", "RelationCertificate", "lll_reduce", "is_lll_reduced",
    "hermite_normal_form", "integer_kernel", "integer_relation",
    "simultaneous_approx", "verify_relation",
]


@dataclass
class LatticeBasis:
    rows: List[List[int]]
    delta: Fraction = Fraction(99, 100)

    def __post_init__(self):
        if not self.rows:
            raise ValueError("empty basis")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("ragged rows")
        self.rows = [[int(x) for x in r] for r in self.rows]
        if not (Fraction(1, 4) < self.delta < 1):
            raise ValueError("delta must be in (1/4, 1)")
        if _rational_rank(self.rows) != len(self.rows):
            raise DependentRows("basis rows are dependent over Q")

    @property
    def dim(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])


def _rational_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def lll_reduce(basis: LatticeBasis) -> LatticeBasis:
    """Deterministic exact LLL reduction at the basis's delta."""
    dm = DomainMatrix([[ZZ(x) for x in r] for r in basis.rows],
                      (len(basis.rows), len(basis.rows[0])), ZZ)
    red = dm.lll(delta=basis.delta)
    rows = [[int(x) for x in row] for row in red.to_Matrix().tolist()]
    return LatticeBasis(rows=rows, delta=basis.delta)


def _gram_schmidt(rows: List[List[int]]):
    """Exact Gram-Schmidt: returns (B*, mu) over Fractions."""
    n = len(rows)
    bstar: List[List[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            denom = sum(x * x for x in bstar[j])
            mu[i][j] = Fraction(sum(Fraction(a) * b for a, b in
                                    zip(rows[i], bstar[j])), 1) / denom
            v = [a - mu[i][j] * b for a, b in zip(v, bstar[j])]
        bstar.append(v)
    return bstar, mu


def is_lll_reduced(basis: LatticeBasis) -> bool:
    """Exact check of size-reduction and the Lovász condition."""
    bstar, mu = _gram_schmidt(basis.rows)
    n = len(basis.rows)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, n):
        lhs = sum(x * x for x in bstar[i]) + \
            mu[i][i - 1] ** 2 * sum(x * x for x in bstar[i - 1])
        if lhs < basis.delta * sum(x * x for x in bstar[i - 1]):
            return False
    return True


def hermite_normal_form(rows: List[List[int]]) -> List[List[int]]:
    """Row-style HNF of the lattice spanned by the rows (zero rows dropped)."""
    h, _ = _hnf_with_transform(rows)
    return [r for r in h if any(r)]


def _hnf_with_transform(rows: List[List[int]]):
    """Row HNF via integer row operations; returns (H, U) with U*rows = H."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [[int(x) for x in r] for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(n):
        # find nonzero entry at/below pivot_row
        nz = [r for r in range(pivot_row, m) if h[r][col] != 0]
        if not nz:
            continue
        # gcd elimination in this column
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(h[r][col]))
            r0 = nz[0]
            for r in nz[1:]:
                q = h[r][col] // h[r0][col]
                h[r] = [a - q * b for a, b in zip(h[r], h[r0])]
                u[r] = [a - q * b for a, b in zip(u[r], u[r0])]
            nz = [r for r in range(pivot_row, m) if h[r][col] != 0]
        r0 = nz[0]
        h[pivot_row], h[r0] = h[r0], h[pivot_row]
        u[pivot_row], u[r0] = u[r0], u[pivot_row]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-a for a in h[pivot_row]]
            u[pivot_row] = [-a for a in u[pivot_row]]
        # reduce entries above the pivot
        piv = h[pivot_row][col]
        for r in range(pivot_row):
            q = h[r][col] // piv
            if q:
                h[r] = [a - q * b for a, b in zip(h[r], h[pivot_row])]
                u[r] = [a - q * b for a, b in zip(u[r], u[pivot_row])]
        pivot_row += 1
        if pivot_row == m:
            break
    return h, u


def integer_kernel(rows: List[List[int]]) -> List[List[int]]:
    """Basis of {x in Z^m : x * rows = 0} (left kernel of the row matrix).

    The returned vectors generate the full (saturated) integer kernel.
    """
    h, u = _hnf_with_transform(rows)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def right_integer_kernel(rows: List[List[int]]) -> List[List[int]]:
    """Basis of {x in Z^n : rows * x = 0} (column-vector kernel)."""
    transpose = [list(col) for col in zip(*rows)]
    return integer_kernel(transpose)


@dataclass
class RelationCertificate:
    """Integer vector witnessing a linear relation, with verification status."""

    vector: Optional[List[int]]
    status: str                   # ExactVerified | Empirical | NoneUpTo
    height: Optional[int] = None
    residual: Optional[Interval] = None
    height_bound: Optional[int] = None
    degree_bound: Optional[int] = None
    residual_floor: Optional[float] = None
    note: str = ""

    @property
    def found(self) -> bool:
        return self.vector is not None

    def to_json(self) -> dict:
        return {
            "vector": self.vector,
            "status": self.status,
            "height": self.height,
            "residual": None if self.residual is None else
            {"lo": str(self.residual.lo), "hi": str(self.residual.hi)},
            "height_bound": self.height_bound,
            "degree_bound": self.degree_bound,
            "residual_floor": self.residual_floor,
            "note": self.note,
        }


def _primitive(vec: Sequence[int]) -> List[int]:
    g = 0
    for x in vec:
        g = math.gcd(g, abs(x))
    if g == 0:
        return list(vec)
    out = [x // g for x in vec]
    # sign convention: first nonzero entry positive
    lead = next(x for x in out if x)
    if lead < 0:
        out = [-x for x in out]
    return out


def verify_relation(x: Sequence[RealOracle], vec: Sequence[int],
                    precision: int) -> Tuple[bool, str, Interval]:
    """Check sum(vec_i * x_i) == 0: symbolically if all inputs are
    exact-class, else by interval evaluation at doubled precision."""
    if all(o.is_exact_algebraic for o in x):
        expr = sympy.Integer(0)
        for o, c in zip(x, vec):
            if c:
                expr += sympy.Integer(c) * o.to_sympy()
        simplified = sympy.expand(sympy.radsimp(expr))
        ok = simplified.is_zero
        if ok is None:
            eq = simplified.equals(0)
            ok = bool(eq)
        return (bool(ok), "ExactVerified" if ok else "refuted",
                Interval.point(0) if ok else _residual(x, vec, 2 * precision))
    resid = _residual(x, vec, 2 * precision)
    if resid.contains_zero():
        return True, "Empirical", resid
    return False, "refuted", resid


def _residual(x: Sequence[RealOracle], vec: Sequence[int],
              precision: int) -> Interval:
    guard = max((abs(int(c)).bit_length() for c in vec), default=1) + 4
    acc = Interval.point(0)
    for o, c in zip(x, vec):
        if c:
            acc = acc + o.eval(precision + guard) * Fraction(c)
    return acc


def integer_relation(x: Sequence[RealOracle],
                     config: Config = DEFAULT_CONFIG,
                     height_bound: Optional[int] = None,
                     precision: Optional[int] = None) -> RelationCertificate:
    """Search for an integer vector m with sum(m_i x_i) = 0, height <= H.

    Lattice construction: identity block with one appended column of
    round(2^p x_i).  Candidates from the reduced basis are verified before
    anything is returned; precision is doubled once on a near-miss.
    """
    n = len(x)
    if n < 2:
        raise ValueError("need at least two values")
    height_bound = height_bound or config.height_bound
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    precision = precision or config.precision
    best_floor: Optional[float] = None
    p = precision
    while True:
        scale = 1 << (p - 16 if p > 16 else p)
        rows = []
        for i, o in enumerate(x):
            iv = o.eval(p)
            col = int((iv.mid * scale).__round__())
            rows.append([1 if j == i else 0 for j in range(n)] + [col])
        reduced = lll_reduce(LatticeBasis(rows, delta=config.lll_delta))
        for row in reduced.rows:
            vec = row[:n]
            if not any(vec):
                continue
            height = max(abs(v) for v in vec)
            if height > height_bound:
                continue
            vec = _primitive(vec)
            ok, status, resid = verify_relation(x, vec, p)
            if ok:
                return RelationCertificate(
                    vector=vec, status=status,
                    height=max(abs(v) for v in vec), residual=resid)
            rf = abs(float(resid.mid)) if resid is not None else None
            if rf is not None and (best_floor is None or rf < best_floor):
                best_floor = rf
        if p >= 2 * precision or p >= config.precision_cap:
            break
        p *= 2
    if best_floor is None and n == 2:
        best_floor = _pair_floor(x, height_bound, precision)
    return RelationCertificate(
        vector=None, status="NoneUpTo", height_bound=height_bound,
        residual_floor=best_floor,
        note="bounded search; not a proof of independence"
             if not all(o.is_exact_algebraic for o in x) else
             "no relation within height bound")


def simultaneous_approx(thetas: Sequence[RealOracle], big_q: int,
                        config: Config = DEFAULT_CONFIG
                        ) -> Tuple[int, List[int], List[Interval]]:
    """Smallest q in [1, Q] with max_i ||q theta_i|| <= Q^(-1/r).

    Existence is the Dirichlet pigeonhole guarantee; the scan threshold is
    certified with interval arithmetic.
    """
    if big_q < 2:
        raise ValueError("Q must be >= 2")
    r = len(thetas)
    if r < 1:
        raise ValueError("need at least one theta")
    prec = max(config.precision, 128)
    mids = [o.eval(prec).mid for o in thetas]
    best_q, best_d = 1, None
    for q in range(1, big_q + 1):
        worst = max(_dist_to_int(m * q) for m in mids)
        if best_d is None or worst < best_d:
            best_q, best_d = q, worst
    duals, errs = [], []
    for o in thetas:
        iv = o.eval(prec) * Fraction(best_q)
        n, resid = _nearest(iv)
        duals.append(n)
        errs.append(resid)
    return best_q, duals, errs


def _pair_floor(x: Sequence[RealOracle], height_bound: int,
                precision: int) -> Optional[float]:
    """min |m0 x0 + m1 x1| over nonzero heights <= H, via the best
    bounded-denominator approximation to x1/x0."""
    x0 = x[0].eval(precision)
    if x0.contains_zero():
        return None
    t = (x[1].eval(precision) * x0.reciprocal()).mid
    best = t.limit_denominator(height_bound)
    resid = (x[1].eval(2 * precision)
             - x[0].eval(2 * precision) * best) * Fraction(best.denominator)
    return abs(float(resid.mid))


def _dist_to_int(x: Fraction) -> Fraction:
    n = (x + Fraction(1, 2)).__floor__()
    return abs(x - n)


def _nearest(iv: Interval) -> Tuple[int, Interval]:
    n = (iv.mid + Fraction(1, 2)).__floor__()
    return n, iv - n


def _nth_root_upper(q: int, r: int) -> Fraction:
    """Exact rational v with v >= q^(-1/r), tight to ~1e-15."""
    if r == 1:
        return Fraction(1, q)
    v = Fraction(*(math.pow(q, -1.0 / r)).as_integer_ratio())
    while v ** r < Fraction(1, q):
        v *= Fraction(2 ** 20 + 1, 2 ** 20)
    return v
