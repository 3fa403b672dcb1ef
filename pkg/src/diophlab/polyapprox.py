"""Polynomial diophantine approximation: integer polynomials with exact
arithmetic, graded dictionary monomial enumeration, minimal-polynomial
recovery and algebraic-dependence search via lattice reduction, and the
exact divisibility check behind the one-variable ideal structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy

from .config import Config, DEFAULT_CONFIG
from .errors import DimensionMismatch
from .intervals import Interval
from .lattice import RelationCertificate, integer_relation
from .oracles import ProductOracle, RationalOracle, RealOracle

__all__ = [
    "IntPolynomial", "MonomialOrder", "PolySequence", "PolyRelation",
    "DivisionReport", "poly_error", "minimal_polynomial",
    "algebraic_dependence", "ideal_containment",
]


# ---------------------------------------------------------------------------
# polynomials


@dataclass
class IntPolynomial:
    """Integer polynomial in s variables as {exponent tuple: coefficient}."""

    nvars: int
    coeffs: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise DimensionMismatch("exponent tuple arity mismatch")
            c = int(c)
            if c != 0:
                clean[exps] = c
        self.coeffs = clean

    # -- constructors

    @classmethod
    def zero(cls, nvars: int) -> "IntPolynomial":
        return cls(nvars, {})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        """coeffs[i] multiplies x^i."""
        return cls(1, {(i,): int(c) for i, c in enumerate(coeffs)})

    def univariate_coeffs(self) -> List[int]:
        if self.nvars != 1:
            raise DimensionMismatch("not univariate")
        d = self.degree
        out = [0] * (d + 1)
        for (e,), c in self.coeffs.items():
            out[e] = c
        return out

    # -- structure

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(sum(e) for e in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_term(self) -> Tuple[Tuple[int, ...], int]:
        exps = max(self.coeffs, key=MonomialOrder.key)
        return exps, self.coeffs[exps]

    def content(self) -> int:
        return math.gcd(*self.coeffs.values()) if self.coeffs else 0

    def normalized(self) -> "IntPolynomial":
        """Primitive with positive leading coefficient (graded dictionary)."""
        if self.is_zero:
            return self
        g = self.content()
        _, lead = self.leading_term()
        if lead < 0:
            g = -g
        return IntPolynomial(self.nvars,
                             {e: c // g for e, c in self.coeffs.items()})

    # -- arithmetic

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(self.nvars, out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.nvars,
                             {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out: Dict[Tuple[int, ...], int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial(self.nvars, out)

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(self.nvars,
                             {e: k * c for e, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntPolynomial)
                and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    # -- evaluation / conversion

    def evaluate(self, points: Sequence) -> object:
        """Evaluate at Fractions or Intervals (anything with + and *)."""
        if len(points) != self.nvars:
            raise DimensionMismatch("point arity mismatch")
        total = None
        for exps, c in sorted(self.coeffs.items(),
                              key=lambda kv: MonomialOrder.key(kv[0])):
            term = Fraction(c)
            for x, e in zip(points, exps):
                for _ in range(e):
                    term = x * term
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def to_sympy(self, symbols: Optional[Sequence] = None):
        if symbols is None:
            symbols = sympy.symbols(f"X1:{self.nvars + 1}")
        expr = sympy.Integer(0)
        for exps, c in self.coeffs.items():
            term = sympy.Integer(c)
            for x, e in zip(symbols, exps):
                term *= x ** e
            expr += term
        return expr

    def to_json(self) -> dict:
        return {"nvars": self.nvars,
                "coeffs": {",".join(map(str, e)): str(c)
                           for e, c in sorted(
                               self.coeffs.items(),
                               key=lambda kv: MonomialOrder.key(kv[0]))}}

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for exps, c in sorted(self.coeffs.items(),
                              key=lambda kv: MonomialOrder.key(kv[0]),
                              reverse=True):
            mono = "*".join(f"X{i + 1}^{e}" if e > 1 else f"X{i + 1}"
                            for i, e in enumerate(exps) if e)
            if mono:
                lead = f"{c}*{mono}" if abs(c) != 1 else ("-" + mono if c < 0
                                                          else mono)
            else:
                lead = str(c)
            parts.append(lead)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


class MonomialOrder:
    """Graded dictionary order on exponent tuples."""

    @staticmethod
    def key(exps: Tuple[int, ...]) -> Tuple:
        # graded, with later variables ranked higher within a degree
        return (sum(exps), tuple(reversed(exps)))

    @staticmethod
    def monomials(nvars: int, max_degree: int,
                  include_constant: bool = True) -> Iterator[Tuple[int, ...]]:
        """All exponent tuples of total degree <= max_degree, ascending."""
        start = 0 if include_constant else 1
        for d in range(start, max_degree + 1):
            block = []
            for combo in combinations_with_replacement(range(nvars), d):
                exps = [0] * nvars
                for i in combo:
                    exps[i] += 1
                block.append(tuple(exps))
            yield from sorted(block)

    @staticmethod
    def count(nvars: int, max_degree: int) -> int:
        """Monomials of total degree in (0, max_degree]."""
        return math.comb(nvars + max_degree, nvars) - 1


@dataclass
class PolySequence:
    """Polynomials of common bounded degree with an evaluation profile."""

    polys: List[IntPolynomial]
    degree_bound: int
    profile: Optional[List[Interval]] = None

    def __post_init__(self):
        for p in self.polys:
            if p.degree > self.degree_bound:
                raise ValueError("degree bound violated")

    def __len__(self):
        return len(self.polys)

    def evaluate_profile(self, thetas: Sequence[RealOracle],
                         config: Config = DEFAULT_CONFIG) -> List[Interval]:
        self.profile = [poly_error(thetas, p, config) for p in self.polys]
        return self.profile


@dataclass
class PolyRelation:
    """Certificate from a polynomial relation search."""

    polynomial: Optional[IntPolynomial]
    certificate: RelationCertificate

    @property
    def found(self) -> bool:
        return self.polynomial is not None

    def to_json(self) -> dict:
        return {"polynomial": None if self.polynomial is None
                else self.polynomial.to_json(),
                "certificate": self.certificate.to_json()}


# ---------------------------------------------------------------------------
# operations


def poly_error(thetas: Sequence[RealOracle], f: IntPolynomial,
               config: Config = DEFAULT_CONFIG) -> Interval:
    """Certified interval for f(thetas)."""
    if len(thetas) != f.nvars:
        raise DimensionMismatch("variable count mismatch")
    if all(o.is_rational for o in thetas):
        return Interval.point(f.evaluate([o.rational_value()
                                          for o in thetas]))
    points = [o.eval(config.precision) for o in thetas]
    val = f.evaluate(points)
    if isinstance(val, Fraction):
        return Interval.point(val)
    return val


def _monomial_oracle(thetas: Sequence[RealOracle],
                     exps: Tuple[int, ...]) -> RealOracle:
    if not any(exps):
        return RationalOracle(1)
    factors = [t for t, e in zip(thetas, exps) if e]
    powers = [e for e in exps if e]
    return ProductOracle(factors, powers)


def minimal_polynomial(theta: RealOracle, dmax: int,
                       hmax: Optional[int] = None,
                       config: Config = DEFAULT_CONFIG) -> PolyRelation:
    """Lowest-degree integer relation among 1, theta, .., theta^d.

    Degrees are searched in increasing order so the first verified hit is
    the minimal polynomial (up to the bounds); returned primitive with
    positive leading coefficient.
    """
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    cfg = config.replace(height_bound=hmax) if hmax else config
    last = None
    for d in range(1, dmax + 1):
        oracles = [RationalOracle(1)]
        oracles += [_monomial_oracle([theta], (k,)) for k in range(1, d + 1)]
        cert = integer_relation(oracles, cfg)
        last = cert
        if cert.vector is not None and cert.vector[d] != 0:
            poly = IntPolynomial.from_univariate(cert.vector).normalized()
            return PolyRelation(polynomial=poly, certificate=cert)
    note = f"no relation up to degree {dmax}"
    cert = RelationCertificate(vector=None, status="NoneUpTo",
                               height_bound=cfg.height_bound,
                               degree_bound=dmax,
                               residual_floor=last.residual_floor
                               if last else None, note=note)
    return PolyRelation(polynomial=None, certificate=cert)


def algebraic_dependence(thetas: Sequence[RealOracle], dmax: int,
                         hmax: Optional[int] = None,
                         include_constant: bool = True,
                         config: Config = DEFAULT_CONFIG) -> PolyRelation:
    """First verified relation among monomials of the thetas, total degree
    graded so lower-degree dependencies are reported first.

    include_constant=False restricts to the subring of polynomials with
    zero constant term.
    """
    if not thetas:
        raise ValueError("need at least one oracle")
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    cfg = config.replace(height_bound=hmax) if hmax else config
    s = len(thetas)
    last = None
    for d in range(1, dmax + 1):
        monos = list(MonomialOrder.monomials(s, d, include_constant))
        oracles = [_monomial_oracle(thetas, e) for e in monos]
        cert = integer_relation(oracles, cfg)
        last = cert
        if cert.vector is not None:
            # reject relations that only involve lower-degree monomials;
            # those were already ruled out at the previous d
            if d > 1 and all(c == 0 for e, c in zip(monos, cert.vector)
                             if sum(e) == d):
                continue
            poly = IntPolynomial(
                s, dict(zip(monos, cert.vector))).normalized()
            return PolyRelation(polynomial=poly, certificate=cert)
    cert = RelationCertificate(vector=None, status="NoneUpTo",
                               height_bound=cfg.height_bound,
                               degree_bound=dmax,
                               residual_floor=last.residual_floor
                               if last else None,
                               note=f"no relation up to degree {dmax}")
    return PolyRelation(polynomial=None, certificate=cert)


@dataclass
class DivisionReport:
    all_divisible: bool
    quotients: List[Optional[IntPolynomial]]
    counterexamples: List[int]

    def to_json(self) -> dict:
        return {"all_divisible": self.all_divisible,
                "quotients": [None if q is None else q.to_json()
                              for q in self.quotients],
                "counterexamples": self.counterexamples}


def ideal_containment(found: Sequence[IntPolynomial],
                      m: IntPolynomial) -> DivisionReport:
    """Exact divisibility m | F for univariate F; quotients when divisible."""
    if m.nvars != 1 or m.is_zero:
        raise ValueError("m must be a nonzero univariate polynomial")
    x = sympy.Symbol("x")
    pm = sympy.Poly(m.to_sympy([x]), x, domain="QQ")
    quotients: List[Optional[IntPolynomial]] = []
    bad: List[int] = []
    for i, f in enumerate(found):
        if f.nvars != 1:
            raise ValueError("found polynomials must be univariate")
        pf = sympy.Poly(f.to_sympy([x]), x, domain="QQ")
        q, r = sympy.div(pf, pm, x)
        if r.is_zero and all(c.is_integer for c in q.all_coeffs()):
            coeffs = [int(c) for c in reversed(sympy.Poly(q, x).all_coeffs())]
            quotients.append(IntPolynomial.from_univariate(coeffs))
        else:
            quotients.append(None)
            bad.append(i)
    return DivisionReport(all_divisible=not bad, quotients=quotients,
                          counterexamples=bad)
