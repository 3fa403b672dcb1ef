"""Refinable real-number oracles.

An oracle produces, on demand, an interval of width <= 2^-p containing a
fixed real value.  Refinement is nested: later intervals are intersected
with the cache so they never move outside earlier answers.

Exactness classes ('rational', 'quadratic', 'algebraic', 'constant',
'stream') decide whether a relation involving the value can be verified
symbolically (the first three) or only empirically.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional

import mpmath
import sympy

from .errors import (
    OracleParseError,
    PrecisionInsufficient,
    UnevaluatableDigitStream,
    ZeroTheta,
)
from .intervals import Interval

__all__ = [
    "RealOracle", "RationalOracle", "SurdOracle", "MinpolyOracle",
    "ConstOracle", "DigitStreamOracle", "MulRationalOracle",
    "InverseOracle", "ExpOracle", "ProductOracle", "parse_oracle",
    "sqrt_interval", "PHI",
]

_MAX_PREC = 1 << 20  # hard stop for internal refinement loops


def sqrt_interval(d: Fraction, prec: int) -> Interval:
    """Certified enclosure of sqrt(d) (d >= 0) of width <= 2^-prec."""
    d = Fraction(d)
    if d < 0:
        raise ValueError("negative radicand")
    if d == 0:
        return Interval.point(0)
    # scale to integer: sqrt(n/m) = sqrt(n*m)/m
    n = d.numerator * d.denominator
    m = d.denominator
    shift = 2 * (prec + 2)
    r = math.isqrt(n << shift)
    denom = (1 << (prec + 2)) * m
    lo = Fraction(r, denom)
    hi = Fraction(r + 1, denom)
    return Interval(lo, hi)


class RealOracle:
    """Base class: a refinable source of one real value."""

    exactness = "derived"

    def __init__(self):
        self._cache: Optional[Interval] = None

    # subclasses implement _compute(prec) -> Interval (width need not be met)
    def _compute(self, prec: int) -> Interval:
        raise NotImplementedError

    def eval(self, prec: int) -> Interval:
        """Interval of width <= 2^-prec containing the value, nested in cache."""
        if prec < 1:
            raise ValueError("precision must be >= 1")
        target = Fraction(1, 1 << prec)
        if self._cache is not None and self._cache.width <= target:
            return self._cache
        p = prec
        while True:
            iv = self._compute(p)
            if self._cache is not None:
                iv = iv.intersect(self._cache)
            self._cache = iv
            if iv.width <= target:
                return iv
            if p >= _MAX_PREC:
                raise PrecisionInsufficient(
                    f"cannot reach width 2^-{prec} for {self!r}")
            p *= 2

    @property
    def is_exact_algebraic(self) -> bool:
        return self.exactness in ("rational", "quadratic", "algebraic")

    @property
    def is_rational(self) -> bool:
        return self.exactness == "rational"

    def rational_value(self) -> Fraction:
        raise TypeError(f"{self!r} is not rational")

    def to_sympy(self):
        raise NotImplementedError

    def describe(self) -> str:
        return repr(self)

    # convenience for certified sign queries at escalating precision
    def certified_sign(self, start_prec: int = 64) -> int:
        p = start_prec
        while p <= _MAX_PREC:
            try:
                return self.eval(p).sign()
            except PrecisionInsufficient:
                p *= 2
        raise PrecisionInsufficient(f"sign of {self!r} undecided")


class RationalOracle(RealOracle):
    exactness = "rational"

    def __init__(self, value):
        super().__init__()
        self.value = Fraction(value)

    def _compute(self, prec):
        return Interval.point(self.value)

    def rational_value(self):
        return self.value

    def to_sympy(self):
        return sympy.Rational(self.value.numerator, self.value.denominator)

    def __repr__(self):
        return f"Rational({self.value})"

    def describe(self):
        return str(self.value)


class SurdOracle(RealOracle):
    """(a + b*sqrt(D)) / c with integer a, b, c and non-square D > 0."""

    exactness = "quadratic"

    def __init__(self, a: int, b: int, c: int, d: int):
        super().__init__()
        if c == 0:
            raise ValueError("zero denominator")
        if d <= 0 or math.isqrt(d) ** 2 == d:
            raise ValueError("D must be positive and non-square")
        self.a, self.b, self.c, self.d = int(a), int(b), int(c), int(d)

    def _compute(self, prec):
        guard = prec + 8 + max(self.b.bit_length(), 1)
        root = sqrt_interval(Fraction(self.d), guard)
        return (root * self.b + self.a) * Fraction(1, self.c)

    def to_sympy(self):
        return (self.a + self.b * sympy.sqrt(self.d)) / sympy.Integer(self.c)

    def __repr__(self):
        return f"Surd(({self.a}+{self.b}*sqrt({self.d}))/{self.c})"

    def describe(self):
        return f"surd({self.a},{self.b},{self.c},{self.d})"


def _mpf_fraction(v) -> Fraction:
    """Exact Fraction of an mpmath float."""
    p, q = mpmath.libmp.to_rational(mpmath.mpf(v)._mpf_)
    return Fraction(int(p), int(q))


class MinpolyOracle(RealOracle):
    """Real algebraic number given by integer polynomial + isolating interval."""

    exactness = "algebraic"

    def __init__(self, coeffs, lo, hi):
        super().__init__()
        self.coeffs = [int(c) for c in coeffs]  # coeffs[i] multiplies x^i
        while self.coeffs and self.coeffs[-1] == 0:
            self.coeffs.pop()
        if len(self.coeffs) < 2:
            raise ValueError("polynomial must be nonconstant")
        lo, hi = Fraction(lo), Fraction(hi)
        slo, shi = self._sign_at(lo), self._sign_at(hi)
        if slo == 0:
            hi = lo
        elif shi == 0:
            lo = hi
        elif slo == shi:
            raise ValueError("interval does not isolate a sign change")
        self._lo, self._hi = lo, hi

    def _poly_at(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _sign_at(self, x):
        v = self._poly_at(x)
        return (v > 0) - (v < 0)

    def _compute(self, prec):
        lo, hi = self._lo, self._hi
        if self._cache is not None:
            lo, hi = self._cache.lo, self._cache.hi
        if lo == hi:
            return Interval.point(lo)
        target = Fraction(1, 1 << prec)
        slo = self._sign_at(lo)
        while hi - lo > target:
            mid = (lo + hi) / 2
            sm = self._sign_at(mid)
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        self._lo, self._hi = lo, hi
        return Interval(lo, hi)

    def to_sympy(self):
        x = sympy.Symbol("x")
        poly = sum(c * x ** i for i, c in enumerate(self.coeffs))
        iv = Interval(self._lo, self._hi) if self._lo != self._hi \
            else Interval.point(self._lo)
        for root in sympy.Poly(poly, x).real_roots():
            rv = Fraction(str(root.evalf(60)))
            if iv.lo - Fraction(1, 10**40) <= rv <= iv.hi + Fraction(1, 10**40):
                return root
        raise ValueError("no root of the polynomial matches the isolating interval")

    def __repr__(self):
        return f"Minpoly({self.coeffs}, [{self._lo},{self._hi}])"

    def describe(self):
        return f"alg({self.coeffs};[{self._lo},{self._hi}])"


class ConstOracle(RealOracle):
    """Symbolic constant: pi, e, or log of a positive rational."""

    exactness = "constant"

    def __init__(self, kind: str, arg: Optional[Fraction] = None):
        super().__init__()
        if kind not in ("pi", "e", "log"):
            raise ValueError(f"unknown constant {kind}")
        if kind == "log":
            arg = Fraction(arg)
            if arg <= 0:
                raise ValueError("log argument must be positive")
            if arg == 1:
                raise ValueError("log(1) is rational; use 0")
        self.kind = kind
        self.arg = arg

    def _compute(self, prec):
        work = prec + 16
        with mpmath.workprec(work):
            if self.kind == "pi":
                v = mpmath.pi
            elif self.kind == "e":
                v = mpmath.e
            else:
                v = mpmath.log(mpmath.mpf(self.arg.numerator)
                               / mpmath.mpf(self.arg.denominator))
            m = _mpf_fraction(v)
        pad = Fraction(1, 1 << (prec + 4))
        return Interval(m - pad, m + pad)

    def to_sympy(self):
        if self.kind == "pi":
            return sympy.pi
        if self.kind == "e":
            return sympy.E
        return sympy.log(sympy.Rational(self.arg.numerator, self.arg.denominator))

    def __repr__(self):
        if self.kind == "log":
            return f"Const(log({self.arg}))"
        return f"Const({self.kind})"

    def describe(self):
        if self.kind == "log":
            return f"log({self.arg})"
        return self.kind


class DigitStreamOracle(RealOracle):
    """Finite decimal/base-b digit expansion; precision capped by the stream."""

    exactness = "stream"

    def __init__(self, base: int, int_part: int, digits: str, negative=False):
        super().__init__()
        if base < 2:
            raise ValueError("base must be >= 2")
        self.base = base
        self.int_part = int(int_part)
        self.digits = [int(d, base) for d in digits]
        self.negative = negative

    def _compute(self, prec):
        target = Fraction(1, 1 << prec)
        avail = Fraction(1, self.base ** len(self.digits))
        if avail > target:
            raise UnevaluatableDigitStream(
                f"stream of {len(self.digits)} base-{self.base} digits cannot "
                f"reach width 2^-{prec}")
        frac = Fraction(0)
        scale = Fraction(1)
        for d in self.digits:
            scale /= self.base
            frac += d * scale
        lo = self.int_part + frac
        hi = lo + avail
        if self.negative:
            lo, hi = -hi, -lo
        return Interval(lo, hi)

    def __repr__(self):
        return f"DigitStream(base={self.base}, {len(self.digits)} digits)"


class MulRationalOracle(RealOracle):
    """q * inner for an exact rational q != 0."""

    def __init__(self, inner: RealOracle, q):
        super().__init__()
        q = Fraction(q)
        if q == 0:
            raise ValueError("use RationalOracle(0) instead")
        self.inner = inner
        self.q = q
        self.exactness = inner.exactness

    def _compute(self, prec):
        grow = max(0, self.q.numerator.bit_length())
        return self.inner.eval(prec + grow + 2) * self.q

    @property
    def is_rational(self):
        return self.inner.is_rational

    def rational_value(self):
        return self.inner.rational_value() * self.q

    def to_sympy(self):
        return sympy.Rational(self.q.numerator, self.q.denominator) * self.inner.to_sympy()

    def __repr__(self):
        return f"({self.q})*{self.inner!r}"

    def describe(self):
        return f"{self.q}*({self.inner.describe()})"


class InverseOracle(RealOracle):
    """1 / inner; requires a certified nonzero sign."""

    def __init__(self, inner: RealOracle):
        super().__init__()
        if inner.certified_sign() == 0:
            raise ZeroTheta("cannot invert zero")
        self.inner = inner
        self.exactness = inner.exactness

    def _compute(self, prec):
        p = prec + 8
        while True:
            iv = self.inner.eval(p)
            if not iv.contains_zero():
                out = iv.reciprocal()
                if out.width <= Fraction(1, 1 << prec):
                    return out
            if p >= _MAX_PREC:
                raise PrecisionInsufficient("inverse refinement stalled")
            p *= 2

    @property
    def is_rational(self):
        return self.inner.is_rational

    def rational_value(self):
        return 1 / self.inner.rational_value()

    def to_sympy(self):
        return 1 / self.inner.to_sympy()

    def __repr__(self):
        return f"inv({self.inner!r})"

    def describe(self):
        return f"inv({self.inner.describe()})"


class ExpOracle(RealOracle):
    """exp(inner), evaluated by outward-rounded mpmath with padding."""

    exactness = "constant"

    def __init__(self, inner: RealOracle):
        super().__init__()
        self.inner = inner
        # exp(log q) = q is rational; callers may want that collapse
        if isinstance(inner, ConstOracle) and inner.kind == "log":
            self.exactness = "constant"  # kept symbolic; see exp_of()

    def _compute(self, prec):
        p = prec + 8
        while True:
            iv = self.inner.eval(p)
            with mpmath.workprec(p + 16):
                lo = _mpf_fraction(mpmath.exp(
                    mpmath.mpf(iv.lo.numerator) / mpmath.mpf(iv.lo.denominator)))
                hi = _mpf_fraction(mpmath.exp(
                    mpmath.mpf(iv.hi.numerator) / mpmath.mpf(iv.hi.denominator)))
            pad = Fraction(1, 1 << (prec + 4)) + (hi - lo) * Fraction(1, 16)
            out = Interval(min(lo, hi) - pad, max(lo, hi) + pad)
            if out.width <= Fraction(1, 1 << prec):
                return out
            if p >= _MAX_PREC:
                raise PrecisionInsufficient("exp refinement stalled")
            p *= 2

    def to_sympy(self):
        return sympy.exp(self.inner.to_sympy())

    def __repr__(self):
        return f"exp({self.inner!r})"

    def describe(self):
        return f"exp({self.inner.describe()})"


def exp_of(inner: RealOracle) -> RealOracle:
    """exp oracle, collapsing exp(log q) -> q and exp(0) -> 1 exactly."""
    if isinstance(inner, ConstOracle) and inner.kind == "log":
        return RationalOracle(inner.arg)
    if inner.is_rational and inner.rational_value() == 0:
        return RationalOracle(1)
    return ExpOracle(inner)


class ProductOracle(RealOracle):
    """coeff * prod(factor_i ** exp_i) with positive integer exponents."""

    def __init__(self, factors, exps, coeff=Fraction(1)):
        super().__init__()
        assert len(factors) == len(exps)
        self.factors = list(factors)
        self.exps = [int(e) for e in exps]
        self.coeff = Fraction(coeff)
        classes = {f.exactness for f in self.factors}
        if all(f.is_exact_algebraic for f in self.factors):
            self.exactness = "algebraic"
        elif classes == {"rational"}:
            self.exactness = "rational"
        else:
            self.exactness = "derived"

    def _compute(self, prec):
        p = prec + 16
        while True:
            acc = Interval.point(self.coeff)
            for f, e in zip(self.factors, self.exps):
                iv = f.eval(p)
                for _ in range(e):
                    acc = acc * iv
            if acc.width <= Fraction(1, 1 << prec) or p >= _MAX_PREC:
                return acc
            p *= 2

    @property
    def is_rational(self):
        return all(f.is_rational for f in self.factors)

    def rational_value(self):
        v = self.coeff
        for f, e in zip(self.factors, self.exps):
            v *= f.rational_value() ** e
        return v

    def to_sympy(self):
        expr = sympy.Rational(self.coeff.numerator, self.coeff.denominator)
        for f, e in zip(self.factors, self.exps):
            expr *= f.to_sympy() ** e
        return expr

    def __repr__(self):
        return "Product(" + ", ".join(
            f"{f!r}^{e}" for f, e in zip(self.factors, self.exps)) + ")"


PHI = SurdOracle(1, 1, 2, 5)  # golden mean (1 + sqrt 5)/2


_SURD_RE = re.compile(r"^surd\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(\d+)\s*\)$")
_LOG_RE = re.compile(r"^log\(\s*([0-9]+(?:/[0-9]+)?)\s*\)$")
_ALG_RE = re.compile(r"^alg\(\s*\[([^\]]*)\]\s*;\s*\[([^\]]*)\]\s*\)$")
_SQRT_RE = re.compile(r"^sqrt\(\s*(\d+)\s*\)$")
_DIGITS_RE = re.compile(r"^digits\(\s*(\d+)\s*,\s*(-?)(\d+)\.(\w*)\s*\)$")


def _parse_number(tok: str) -> Fraction:
    tok = tok.strip().replace("−", "-")
    return Fraction(tok)


def parse_oracle(text: str) -> RealOracle:
    """Parse an oracle literal.

    Accepted forms: "3/7", "-2", "1.25", "pi", "e", "phi", "log(2)",
    "sqrt(2)", "surd(a,b,c,D)", "alg([c0,c1,...];[lo,hi])",
    "digits(10,3.14159)", and "exp(<literal>)".
    """
    text = text.strip().replace("−", "-")
    if text == "pi":
        return ConstOracle("pi")
    if text == "e":
        return ConstOracle("e")
    if text == "phi":
        return SurdOracle(1, 1, 2, 5)
    m = _LOG_RE.match(text)
    if m:
        return ConstOracle("log", Fraction(m.group(1)))
    m = _SQRT_RE.match(text)
    if m:
        d = int(m.group(1))
        r = math.isqrt(d)
        if r * r == d:
            return RationalOracle(r)
        return SurdOracle(0, 1, 1, d)
    m = _SURD_RE.match(text)
    if m:
        return SurdOracle(*(int(g) for g in m.groups()))
    m = _ALG_RE.match(text)
    if m:
        coeffs = [int(_parse_number(t)) for t in m.group(1).split(",")]
        lo, hi = (Fraction(_parse_number(t)) for t in m.group(2).split(","))
        return MinpolyOracle(coeffs, lo, hi)
    m = _DIGITS_RE.match(text)
    if m:
        base = int(m.group(1))
        return DigitStreamOracle(base, int(m.group(3)), m.group(4),
                                 negative=m.group(2) == "-")
    if text.startswith("exp(") and text.endswith(")"):
        return exp_of(parse_oracle(text[4:-1]))
    try:
        return RationalOracle(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise OracleParseError(f"cannot parse oracle literal {text!r}") from exc
