"""Totally real number fields with their real-place geometry: exact
element arithmetic from a multiplication table, the many-dimensional
pigeonhole theorem for approximation by a field element, place-by-place
membership of field-element sequences, trace and Galois transport,
conjugate-product polynomials, and denominator clearing for algebraic
numbers.

A field is given concretely: an integral basis with first element 1, the
exact multiplication table of the basis, and one real-embedding oracle
row per place.  Nothing here factors ideals; correctness is enforced
locally (associativity of the table, certified nonvanishing of det E).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .config import Config, DEFAULT_CONFIG
from .dagroups import ApproxSequence
from .errors import (DimensionMismatch, EnumerationCapExceeded, KRational,
                     LengthMismatch, NonIntegralCoefficients,
                     NotAutomorphism, NotPositive, PrecisionInsufficient)
from .intervals import Interval
from .lattice import integer_relation
from .numeric_core import nearest_integer
from .oracles import (MinpolyOracle, ProductOracle, RationalOracle,
                      RealOracle, SurdOracle, parse_oracle)
from .polyapprox import IntPolynomial

__all__ = [
    "NumberField", "FieldElement", "OApproxSequence", "OMembershipVerdict",
    "KRationalWitness", "make_field", "load_field", "embed", "k_dirichlet",
    "o_membership", "krational_test", "trace_push", "galois_apply",
    "conjugate_poly", "clear_denominator",
]


# ---------------------------------------------------------------------------
# fields and elements


@dataclass
class NumberField:
    """Totally real field given by basis, multiplication table, embeddings.

    mult_table[i][j] is the exact coordinate vector of basis_i * basis_j.
    embeddings[v][j] is a real oracle for the image of basis_j at place v.
    """

    degree: int
    basis_names: List[str]
    mult_table: List[List[List[Fraction]]]
    embeddings: List[List[RealOracle]]
    name: str = ""

    def __post_init__(self):
        d = self.degree
        if len(self.basis_names) != d or len(self.mult_table) != d or \
                len(self.embeddings) != d:
            raise DimensionMismatch("field data arity mismatch")
        self.mult_table = [[[Fraction(x) for x in vec] for vec in row]
                           for row in self.mult_table]
        # basis_0 must be the unit
        for j in range(d):
            if self.mult_table[0][j] != self._unit_vec(j):
                raise DimensionMismatch("basis must start with 1")
        self._check_associativity()
        self._check_embeddings()

    def _unit_vec(self, j: int) -> List[Fraction]:
        return [Fraction(1) if k == j else Fraction(0)
                for k in range(self.degree)]

    def _check_associativity(self):
        d = self.degree
        for i, j, k in iter_product(range(d), repeat=3):
            left = self._mul_coords(self.mult_table[i][j], self._unit(k))
            right = self._mul_coords(self._unit(i), self.mult_table[j][k])
            if left != right:
                raise DimensionMismatch(
                    f"multiplication table not associative at ({i},{j},{k})")

    def _unit(self, i: int) -> List[Fraction]:
        return self._unit_vec(i)

    def _mul_coords(self, a: Sequence[Fraction],
                    b: Sequence[Fraction]) -> List[Fraction]:
        d = self.degree
        out = [Fraction(0)] * d
        for i in range(d):
            if a[i] == 0:
                continue
            for j in range(d):
                if b[j] == 0:
                    continue
                c = a[i] * b[j]
                for k, t in enumerate(self.mult_table[i][j]):
                    if t:
                        out[k] += c * t
        return out

    def _check_embeddings(self):
        for row in self.embeddings:
            if len(row) != self.degree:
                raise DimensionMismatch("embedding row arity mismatch")
        prec = 64
        while True:
            grid = [[o.eval(prec) for o in row] for row in self.embeddings]
            det = _interval_det(grid)
            if not det.contains_zero():
                return
            if prec >= 4096:
                raise PrecisionInsufficient("cannot certify det E != 0")
            prec *= 2

    # -- element helpers

    def element(self, coords: Sequence) -> "FieldElement":
        return FieldElement(self, [Fraction(x) for x in coords])

    def one(self) -> "FieldElement":
        return self.element(self._unit_vec(0))

    def zero(self) -> "FieldElement":
        return self.element([0] * self.degree)

    def basis_element(self, j: int) -> "FieldElement":
        return self.element(self._unit_vec(j))

    def basis_traces(self) -> List[Fraction]:
        """Trace of each basis element via the regular representation."""
        return [sum(self.mult_table[j][k][k] for k in range(self.degree))
                for j in range(self.degree)]

    def regular_matrix(self, coords: Sequence[Fraction]) -> List[List[Fraction]]:
        """Matrix of multiplication by the element, columns = images of basis."""
        d = self.degree
        cols = [self._mul_coords(list(coords), self._unit_vec(j))
                for j in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]


@dataclass
class FieldElement:
    field_ref: NumberField
    coords: List[Fraction]

    def __post_init__(self):
        self.coords = [Fraction(x) for x in self.coords]
        if len(self.coords) != self.field_ref.degree:
            raise DimensionMismatch("coordinate arity mismatch")

    @property
    def is_integral_coords(self) -> bool:
        return all(x.denominator == 1 for x in self.coords)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.field_ref,
                            [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.field_ref,
                            [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field_ref, [-a for a in self.coords])

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.field_ref,
                            self.field_ref._mul_coords(self.coords,
                                                       other.coords))

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElement)
                and other.field_ref is self.field_ref
                and other.coords == self.coords)

    def _same_field(self, other: "FieldElement"):
        if other.field_ref is not self.field_ref:
            raise DimensionMismatch("elements of different fields")

    def coord_norm_sq(self) -> Fraction:
        """Squared euclidean norm of the basis coordinates."""
        return sum(x * x for x in self.coords)

    def is_positive(self) -> bool:
        """Coordinatewise positivity in the basis order."""
        return all(x > 0 for x in self.coords)

    def trace(self) -> Fraction:
        tr = self.field_ref.basis_traces()
        return sum(c * t for c, t in zip(self.coords, tr))

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.coords]}

    def __str__(self):
        names = self.field_ref.basis_names
        parts = [f"{c}*{n}" if n != "1" else str(c)
                 for c, n in zip(self.coords, names) if c != 0]
        return " + ".join(parts) if parts else "0"


@dataclass
class OApproxSequence:
    """Field-element sequence with duals and per-place error profiles."""

    entries: List[FieldElement]
    duals: Optional[List[FieldElement]] = None
    place_profiles: Optional[List[List[Interval]]] = None

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty sequence")
        if self.duals is not None and len(self.duals) != len(self.entries):
            raise LengthMismatch("duals length != entries length")

    def __len__(self):
        return len(self.entries)

    @property
    def field_ref(self) -> NumberField:
        return self.entries[0].field_ref


@dataclass
class OMembershipVerdict:
    status: str                      # CertifiedMember | EmpiricalMember | NotMember
    tau: Fraction
    place_profiles: List[List[Interval]]
    place_verdicts: List[str]
    witness: Optional[Tuple[int, int]] = None    # (place, index)
    duals: Optional[List[FieldElement]] = None

    @property
    def is_member(self) -> bool:
        return self.status != "NotMember"

    def to_json(self) -> dict:
        return {"status": self.status, "tau": str(self.tau),
                "place_verdicts": self.place_verdicts,
                "witness": self.witness,
                "duals": None if self.duals is None else
                [d.to_json() for d in self.duals]}


# ---------------------------------------------------------------------------
# construction


def make_field(spec: str) -> NumberField:
    """Built-in fields: "Q", "Q(sqrt D)" for non-square D > 0, "maxreal7"."""
    text = spec.strip()
    if text == "Q":
        return NumberField(
            degree=1, basis_names=["1"],
            mult_table=[[[Fraction(1)]]],
            embeddings=[[RationalOracle(1)]], name="Q")
    if text.startswith("Q(sqrt") and text.endswith(")"):
        d = int(text[len("Q(sqrt"):-1].strip())
        if d <= 1 or math.isqrt(d) ** 2 == d:
            raise ValueError("D must be a non-square integer > 1")
        one = Fraction(1)
        zero = Fraction(0)
        return NumberField(
            degree=2, basis_names=["1", f"sqrt{d}"],
            mult_table=[[[one, zero], [zero, one]],
                        [[zero, one], [Fraction(d), zero]]],
            embeddings=[
                [RationalOracle(1), SurdOracle(0, 1, 1, d)],
                [RationalOracle(1), SurdOracle(0, -1, 1, d)],
            ], name=text)
    if text == "maxreal7":
        return _maxreal7()
    raise ValueError(f"unknown field spec {spec!r}")


def _maxreal7() -> NumberField:
    """Degree-3 totally real field generated by psi = 2cos(2pi/7).

    Minimal polynomial x^3 + x^2 - 2x - 1; basis {1, psi, psi^2} with
    psi^3 = -psi^2 + 2psi + 1 and psi^4 = 3psi^2 - psi - 1.
    """
    one, zero, two = Fraction(1), Fraction(0), Fraction(2)
    table = [
        [[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        [[zero, one, zero], [zero, zero, one], [one, two, -one]],
        [[zero, zero, one], [one, two, -one], [-one, -one, Fraction(3)]],
    ]
    coeffs = [-1, -2, 1, 1]
    # isolating intervals for the three real roots, narrowest first checks
    windows = [(Fraction(6, 5), Fraction(13, 10)),
               (Fraction(-1, 2), Fraction(-2, 5)),
               (Fraction(-19, 10), Fraction(-7, 4))]
    embeddings = []
    for lo, hi in windows:
        root = MinpolyOracle(coeffs, lo, hi)
        embeddings.append([RationalOracle(1), root,
                           ProductOracle([root], [2])])
    names = ["1", "psi", "psi^2"]
    return NumberField(degree=3, basis_names=names, mult_table=table,
                       embeddings=embeddings, name="maxreal7")


def load_field(path: str) -> NumberField:
    """Field definition from TOML: degree, basis, mult_table, embeddings."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    degree = int(data["degree"])
    names = list(data["basis"])
    table = [[[Fraction(x) for x in vec] for vec in row]
             for row in data["mult_table"]]
    embeddings = [[parse_oracle(lit) for lit in row]
                  for row in data["embeddings"]]
    return NumberField(degree=degree, basis_names=names, mult_table=table,
                       embeddings=embeddings,
                       name=data.get("name", path))


# ---------------------------------------------------------------------------
# geometry


def _interval_det(grid: List[List[Interval]]) -> Interval:
    n = len(grid)
    if n == 1:
        return grid[0][0]
    total = Interval.point(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in grid[1:]]
        term = grid[0][j] * _interval_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def embed(k: NumberField, x: FieldElement,
          precision: int = 96) -> List[Interval]:
    """Place coordinates of x: one certified interval per real place."""
    if x.field_ref is not k:
        raise DimensionMismatch("element of a different field")
    out = []
    for row in k.embeddings:
        acc = Interval.point(0)
        for c, o in zip(x.coords, row):
            if c != 0:
                acc = acc + o.eval(precision) * c
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# the pigeonhole theorem


def k_dirichlet(k: NumberField, theta: RealOracle, eta: FieldElement,
                config: Config = DEFAULT_CONFIG
                ) -> Tuple[FieldElement, FieldElement]:
    """Nonzero gamma with small coordinates and gamma*theta close to O.

    Enumerates the box [0, eta) lexicographically in basis coordinates and
    finds the first collision of the fractional data of beta*theta in the
    product of n_i boxes; gamma is the difference of the colliding pair.
    Postconditions, certified by intervals:
    coordinate norm of gamma < that of eta, and the coordinate norm of
    gamma*theta - gamma_dual is < sqrt(sum 1/n_i^2).
    """
    if eta.field_ref is not k:
        raise DimensionMismatch("eta from a different field")
    if not (eta.is_positive() and eta.is_integral_coords):
        raise NotPositive("eta must have positive integer coordinates")
    witness = krational_test(k, theta, h=config.height_bound)
    if witness.found:
        raise KRational(f"theta lies in the field at place {witness.place}")

    ns = [int(c) for c in eta.coords]
    total = math.prod(ns)
    if total < 2:
        raise NotPositive("eta = 1 admits no nonzero gamma below it")
    if total > config.enum_cap:
        raise EnumerationCapExceeded(
            f"box volume {total} exceeds cap {config.enum_cap}")

    d = k.degree
    # beta = sum a_j basis_j with 0 <= a_j < n_j; since the action of theta
    # is scalar on every place, the basis coordinates of beta*theta are
    # simply theta*a_j, so floors and box indices are per-coordinate
    boxes: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
    # sentinel: the unit direction 1 with dual -1 per coordinate sits in
    # the top box, mirroring the classical proof's extra point
    top = tuple(n - 1 for n in ns)
    boxes[top] = (tuple([0] * d), tuple([-1] * d))

    for combo in iter_product(*[range(n) for n in ns]):
        key = []
        floors = []
        for a, n in zip(combo, ns):
            fl, bx = _floor_and_box(theta, a, n, config)
            floors.append(fl)
            key.append(bx)
        key = tuple(key)
        if key in boxes:
            other, other_floor = boxes[key]
            gamma = k.element([a - b for a, b in zip(combo, other)])
            gamma_dual = k.element([a - b for a, b in
                                    zip(floors, other_floor)])
            if gamma.is_zero:
                continue
            _certify_dirichlet(k, theta, gamma, gamma_dual, eta, ns, config)
            return gamma, gamma_dual
        boxes[key] = (combo, tuple(floors))
    raise EnumerationCapExceeded("no collision found (should be impossible)")


def _floor_and_box(theta: RealOracle, a: int, n: int,
                   config: Config) -> Tuple[int, int]:
    """floor(theta*a) and the box index floor(n * frac(theta*a))."""
    if a == 0:
        return 0, 0
    prec = config.precision
    while True:
        iv = theta.eval(prec) * Fraction(a)
        try:
            fl = iv.floor()
            bx = ((iv - fl) * Fraction(n)).floor()
            return fl, min(bx, n - 1)
        except PrecisionInsufficient:
            if prec >= config.precision_cap:
                raise
            prec *= 2


def _certify_dirichlet(k: NumberField, theta: RealOracle,
                       gamma: FieldElement, gamma_dual: FieldElement,
                       eta: FieldElement, ns: List[int], config: Config):
    if gamma.coord_norm_sq() >= eta.coord_norm_sq():
        raise AssertionError("size bound violated")
    bound_sq = sum(Fraction(1, n * n) for n in ns)
    prec = config.precision
    while True:
        iv = theta.eval(prec)
        total = Interval.point(0)
        for g, gd in zip(gamma.coords, gamma_dual.coords):
            e = iv * g - gd
            total = total + e.square()
        if total.hi < bound_sq:
            return
        if total.lo >= bound_sq:
            raise AssertionError("error bound violated")
        if prec >= config.precision_cap:
            raise PrecisionInsufficient("cannot certify error bound")
        prec *= 2


# ---------------------------------------------------------------------------
# membership across places


def _place_value(k: NumberField, x: FieldElement, v: int,
                 precision: int) -> Interval:
    acc = Interval.point(0)
    for c, o in zip(x.coords, k.embeddings[v]):
        if c != 0:
            acc = acc + o.eval(precision) * c
    return acc


def _default_duals(k: NumberField, theta: RealOracle,
                   entries: Sequence[FieldElement],
                   config: Config) -> List[FieldElement]:
    """Nearest integral element coordinatewise: theta acts as a scalar on
    every place, so the best dual of sum a_j basis_j rounds theta*a_j."""
    out = []
    for x in entries:
        coords = []
        for a in x.coords:
            if a == 0:
                coords.append(0)
                continue
            prec = config.precision
            while True:
                try:
                    m, _ = nearest_integer(theta.eval(prec) * a)
                    coords.append(m)
                    break
                except PrecisionInsufficient:
                    if prec >= config.precision_cap:
                        raise
                    prec *= 2
        out.append(k.element(coords))
    return out


def o_membership(k: NumberField, theta: RealOracle, seq: OApproxSequence,
                 tau: Optional[Fraction] = None,
                 config: Config = DEFAULT_CONFIG) -> OMembershipVerdict:
    """Global membership = conjunction of the per-place verdicts.

    Per place v, the errors are theta * v(alpha_i) - v(dual_i); a single
    certified violation at any place defeats global membership even when
    other places look perfect (locality does not globalize).
    """
    tau = Fraction(tau) if tau is not None else config.tau
    if seq.field_ref is not k:
        raise DimensionMismatch("sequence from a different field")
    duals = seq.duals or _default_duals(k, theta, seq.entries, config)
    n_places = k.degree
    profiles: List[List[Interval]] = []
    place_verdicts: List[str] = []
    witness = None
    for v in range(n_places):
        verdict, profile, bad = _place_verdict(k, theta, seq.entries,
                                               duals, v, tau, config)
        if bad is not None and witness is None:
            witness = (v, bad)
        profiles.append(profile)
        place_verdicts.append(verdict)
    seq.place_profiles = profiles
    if witness is not None:
        return OMembershipVerdict(status="NotMember", tau=tau,
                                  place_profiles=profiles,
                                  place_verdicts=place_verdicts,
                                  witness=witness, duals=duals)
    return OMembershipVerdict(status="EmpiricalMember", tau=tau,
                              place_profiles=profiles,
                              place_verdicts=place_verdicts, duals=duals)


def _place_error(k: NumberField, theta: RealOracle, x: FieldElement,
                 xd: FieldElement, v: int, prec: int) -> Interval:
    return theta.eval(prec) * _place_value(k, x, v, prec) \
        - _place_value(k, xd, v, prec)


def _place_verdict(k: NumberField, theta: RealOracle,
                   entries: Sequence[FieldElement],
                   duals: Sequence[FieldElement], v: int, tau: Fraction,
                   config: Config):
    """One place's membership decision, mirroring the scalar policy:
    a decay fit plus a certified-small final error make a member; a
    certified error above tau is only decisive when no such fit exists."""
    from .dagroups import _profile_from_eps
    eps = [_place_error(k, theta, x, xd, v, config.precision)
           for x, xd in zip(entries, duals)]
    profile = _profile_from_eps(eps)
    fit_ok = False
    if profile.fit is not None:
        _, lam, r2 = profile.fit
        fit_ok = lam >= config.lambda_min and r2 >= config.r2_min
    if profile.all_zero:
        return "Member", eps, None
    if fit_ok and _place_below(k, theta, entries[-1], duals[-1], v, tau,
                               config):
        return "Member", eps, None
    for i in range(len(entries)):
        prec = config.precision
        while True:
            a = abs(_place_error(k, theta, entries[i], duals[i], v, prec))
            if a.lo > tau:
                return "NotMember", eps, i
            if a.hi <= tau:
                break
            if prec >= config.precision_cap:
                raise PrecisionInsufficient("tau undecidable at cap")
            prec *= 2
    return "Member", eps, None


def _place_below(k: NumberField, theta: RealOracle, x: FieldElement,
                 xd: FieldElement, v: int, tau: Fraction,
                 config: Config) -> bool:
    prec = config.precision
    while True:
        a = abs(_place_error(k, theta, x, xd, v, prec))
        if a.hi < tau:
            return True
        if a.lo >= tau:
            return False
        if prec >= config.precision_cap:
            raise PrecisionInsufficient("tau undecidable at cap")
        prec *= 2


@dataclass
class KRationalWitness:
    found: bool
    place: Optional[int] = None
    alpha: Optional[FieldElement] = None
    alpha_dual: Optional[FieldElement] = None
    bound: int = 0

    def to_json(self) -> dict:
        return {"found": self.found, "place": self.place,
                "alpha": None if self.alpha is None else self.alpha.to_json(),
                "bound": self.bound}


def krational_test(k: NumberField, theta: RealOracle,
                   h: int = 1000,
                   config: Config = DEFAULT_CONFIG) -> KRationalWitness:
    """Search for alpha in O with v(alpha)*theta in v(O) at some place.

    Runs an integer-relation search on {v(basis_j)*theta} united with
    {v(basis_j)}; a relation c.(v(b_j) theta) = c'.(v(b_j)) exhibits the
    witness alpha = sum c_j b_j.  Bounded and honestly labeled: absence of
    a witness up to height h proves nothing.
    """
    cfg = config.replace(height_bound=h)
    d = k.degree
    for v in range(d):
        row = k.embeddings[v]
        oracles = []
        for o in row:
            if o.is_rational:
                q = o.rational_value()
                oracles.append(RationalOracle(0) if q == 0
                               else _scaled(theta, q))
            else:
                oracles.append(ProductOracle([o, theta], [1, 1]))
        oracles += list(row)
        cert = integer_relation(oracles, cfg)
        if cert.vector is not None:
            c = cert.vector[:d]
            if any(c):
                alpha = k.element(c)
                dual = k.element([-x for x in cert.vector[d:]])
                return KRationalWitness(found=True, place=v, alpha=alpha,
                                        alpha_dual=dual, bound=h)
    return KRationalWitness(found=False, bound=h)


def _scaled(theta: RealOracle, q: Fraction) -> RealOracle:
    from .oracles import MulRationalOracle
    return MulRationalOracle(theta, q)


# ---------------------------------------------------------------------------
# transport


def trace_push(k: NumberField, seq: OApproxSequence,
               config: Config = DEFAULT_CONFIG) -> ApproxSequence:
    """Entrywise trace; the pushed error is the sum of the place errors,
    so a member with tolerance tau maps to a member with tolerance d*tau.
    """
    if seq.field_ref is not k:
        raise DimensionMismatch("sequence from a different field")
    entries = []
    duals = None
    for x in seq.entries:
        t = x.trace()
        if t.denominator != 1:
            raise NonIntegralCoefficients("basis traces must be integral")
        entries.append(int(t))
    if seq.duals is not None:
        duals = []
        for x in seq.duals:
            t = x.trace()
            if t.denominator != 1:
                raise NonIntegralCoefficients("basis traces must be integral")
            duals.append(int(t))
    return ApproxSequence(entries=entries, duals=duals,
                          provenance="Constructed(trace)")


def galois_apply(k: NumberField, sigma: Sequence[Sequence],
                 seq: OApproxSequence) -> OApproxSequence:
    """Apply an automorphism given as an exact matrix on basis coordinates.

    The matrix is checked against the multiplication table: it must fix 1
    and commute with products of basis elements.
    """
    d = k.degree
    mat = [[Fraction(x) for x in row] for row in sigma]
    if len(mat) != d or any(len(r) != d for r in mat):
        raise DimensionMismatch("automorphism matrix arity mismatch")

    def apply(coords: Sequence[Fraction]) -> List[Fraction]:
        return [sum(mat[i][j] * coords[j] for j in range(d))
                for i in range(d)]

    if apply(k._unit_vec(0)) != k._unit_vec(0):
        raise NotAutomorphism("does not fix 1")
    for i in range(d):
        for j in range(d):
            lhs = apply(k.mult_table[i][j])
            rhs = k._mul_coords(apply(k._unit_vec(i)),
                                apply(k._unit_vec(j)))
            if lhs != rhs:
                raise NotAutomorphism(
                    f"product of basis {i},{j} not preserved")

    entries = [k.element(apply(x.coords)) for x in seq.entries]
    duals = None
    if seq.duals is not None:
        duals = [k.element(apply(x.coords)) for x in seq.duals]
    return OApproxSequence(entries=entries, duals=duals)


# ---------------------------------------------------------------------------
# conjugate polynomials, denominators


def conjugate_poly(k: NumberField, seq: OApproxSequence) -> List[IntPolynomial]:
    """Per index, the product over places of (v(alpha) X - v(dual)).

    Computed exactly as det(X*M_alpha - M_dual) with M the regular
    representation; the commuting matrices share eigenvectors, so the
    determinant is exactly the product over places.  Coefficients are
    symmetric in the conjugates, hence integers; anything else signals a
    bug in the field data.
    """
    if seq.duals is None:
        raise ValueError("sequence must carry duals")
    x = sympy.Symbol("X")
    out = []
    for alpha, dual in zip(seq.entries, seq.duals):
        ma = k.regular_matrix(alpha.coords)
        md = k.regular_matrix(dual.coords)
        m = sympy.Matrix(k.degree, k.degree,
                         lambda i, j: x * sympy.Rational(ma[i][j])
                         - sympy.Rational(md[i][j]))
        poly = sympy.Poly(m.det(method="berkowitz"), x)
        coeffs = list(reversed(poly.all_coeffs()))
        ints = []
        for c in coeffs:
            r = sympy.Rational(c)
            if r.q != 1:
                raise NonIntegralCoefficients(f"coefficient {c} not integral")
            ints.append(int(r))
        out.append(IntPolynomial.from_univariate(ints))
    return out


def clear_denominator(alpha: MinpolyOracle) -> Tuple[MinpolyOracle, int]:
    """Scale an algebraic number to an algebraic integer.

    For minimal polynomial sum c_i x^i with leading coefficient a, the
    number a*alpha satisfies the monic polynomial
    y^d + sum_{i<d} c_i a^{d-1-i} y^i; returns (oracle for a*alpha, a).
    """
    coeffs = list(alpha.coeffs)
    a = coeffs[-1]
    if a < 0:
        coeffs = [-c for c in coeffs]
        a = -a
    if a == 1:
        return alpha, 1
    d = len(coeffs) - 1
    monic = [coeffs[i] * a ** (d - 1 - i) for i in range(d)] + [1]
    return MinpolyOracle(monic, alpha._lo * a, alpha._hi * a), a
