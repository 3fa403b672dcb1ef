"""Kronecker foliations of the torus: the lattice of leaf self-matches,
leaf topology as a euclidean quotient, minimality via the torus closure,
orbit sampling with discrepancy, finite covering towers, and deterministic
CSV/SVG rendering.

A matrix Theta (r x s) foliates T^{s+r} by translates of the graph
y = Theta x; integer vectors (n, n_perp) with Theta n = n_perp act on a
leaf, so their lattice Gamma decides whether leaves are planes or
cylinders/tori.  The homogeneous variant uses the kernel gamma instead.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .config import Config, DEFAULT_CONFIG
from .errors import DimensionMismatch, UnsupportedProjection
from .intervals import Interval
from .lattice import RelationCertificate, integer_relation
from .matrixdioph import (RealMatrix, homogeneous_independence,
                          inhomogeneous_independence, torus_closure,
                          TorusClosure)
from .oracles import MulRationalOracle, RationalOracle, RealOracle

__all__ = [
    "KroneckerFoliation", "LeafClass", "OrbitSample", "CoveringStage",
    "classify_leaves", "minimality", "orbit_sample", "covering_tower",
    "render", "star_discrepancy",
]


@dataclass
class LeafClass:
    """Leaf homeomorphism type: R^s modulo a rank-k lattice."""

    kind: str                      # Planar | NonSimplyConnected
    rank: int
    basis: List[List[int]]
    exact: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank,
                "basis": [[str(x) for x in v] for v in self.basis],
                "exact": self.exact, "note": self.note}


@dataclass
class KroneckerFoliation:
    """Foliation data: Theta plus the match lattices of both variants."""

    theta: RealMatrix
    gamma_full: LeafClass          # lattice Gamma for the affine foliation
    gamma_homog: LeafClass         # kernel lattice for the homogeneous one
    closure: Optional[TorusClosure] = None

    def to_json(self) -> dict:
        return {"shape": list(self.theta.shape),
                "full": self.gamma_full.to_json(),
                "homogeneous": self.gamma_homog.to_json(),
                "closure": None if self.closure is None
                else self.closure.to_json()}


@dataclass
class OrbitSample:
    """Points (x mod 1, Theta x mod 1) along a line in the leaf direction."""

    points: List[Tuple[Fraction, ...]]
    n: int
    start: List[Fraction]
    step: Fraction
    params: List[Fraction] = field(default_factory=list)  # unreduced t per point

    def __len__(self):
        return len(self.points)

    def coordinate(self, i: int) -> List[Fraction]:
        return [p[i] for p in self.points]


# ---------------------------------------------------------------------------
# leaf topology


def classify_leaves(theta: RealMatrix, h: Optional[int] = None,
                    config: Config = DEFAULT_CONFIG) -> KroneckerFoliation:
    """Lattice of integer leaf matches, affine and homogeneous.

    Rational matrices give exact lattices (kernel computations); exact
    irrational classes give symbolically verified certificates; anything
    empirical downgrades the claim to "Planar up to the height bound".
    """
    cfg = config.replace(height_bound=h) if h else config
    r, s = theta.shape

    if theta.is_rational:
        full = _rational_gamma(theta)
        independent, certs = homogeneous_independence(theta, cfg)
        kernel = [c.vector for c in certs if c.vector is not None]
        homog = _leaf_class(kernel, exact=True)
    else:
        full = _searched_gamma(theta, cfg)
        independent, certs = homogeneous_independence(theta, cfg)
        kernel = [c.vector for c in certs
                  if c.vector is not None and c.status == "ExactVerified"]
        exact = all(c.status in ("ExactVerified", "NoneUpTo") for c in certs)
        homog = _leaf_class(kernel, exact=exact,
                            note="" if exact else f"up to H={cfg.height_bound}")
    return KroneckerFoliation(theta=theta, gamma_full=full,
                              gamma_homog=homog)


def _leaf_class(basis: List[List[int]], exact: bool,
                note: str = "") -> LeafClass:
    rank = len(basis)
    kind = "Planar" if rank == 0 else "NonSimplyConnected"
    return LeafClass(kind=kind, rank=rank, basis=[list(b) for b in basis],
                     exact=exact, note=note)


def _rational_gamma(theta: RealMatrix) -> LeafClass:
    """Exact basis of {(n, n_perp) : Theta n = n_perp} for rational Theta."""
    import math as _math
    from .lattice import integer_kernel
    rows = theta.rational_rows()
    r, s = theta.shape
    den = _math.lcm(*[x.denominator for row in rows for x in row])
    a = [[int(x * den) for x in row] for row in rows]     # r x s
    # solve A n + den * k = 0 over Z; then n_perp = -k
    stacked = [[a[i][j] for i in range(r)] for j in range(s)]
    stacked += [[den if i == j else 0 for i in range(r)] for j in range(r)]
    kernel = integer_kernel(stacked)   # rows (n | k)
    basis = [list(v[:s]) + [-x for x in v[s:]] for v in kernel]
    basis = [_sign_fix(b) for b in basis if any(b)]
    return _leaf_class(basis, exact=True)


def _sign_fix(vec: List[int]) -> List[int]:
    lead = next(x for x in vec if x)
    return [-x for x in vec] if lead < 0 else list(vec)


def _searched_gamma(theta: RealMatrix, config: Config) -> LeafClass:
    """Certificate search for Theta n integral, irrational entries."""
    r, s = theta.shape
    one = RationalOracle(1)
    cert = integer_relation(list(theta.rows[0]) + [one], config)
    if cert.vector is None:
        return _leaf_class([], exact=True,
                           note=f"no relation up to H={config.height_bound}")
    n = cert.vector[:s]
    perp = [-cert.vector[s]]
    exact = cert.status == "ExactVerified"
    for i in range(1, r):
        # the same n must make every other row integral as well
        prec = config.precision * 2
        acc = Interval.point(0)
        for j in range(s):
            acc = acc + theta.rows[i][j].eval(prec) * Fraction(n[j])
        lo = (acc + Fraction(1, 2)).floor()
        resid = acc - lo
        if not resid.contains_zero():
            return _leaf_class([], exact=False,
                               note="row relation fails in other rows")
        perp.append(lo)
        exact = False
    vec = list(n) + perp
    return _leaf_class([vec], exact=exact,
                       note="" if exact else f"up to H={config.height_bound}")


def minimality(theta: RealMatrix, h: Optional[int] = None,
               config: Config = DEFAULT_CONFIG) -> Tuple[bool, TorusClosure]:
    """Minimal iff the induced subgroup is dense in the torus."""
    cfg = config.replace(height_bound=h) if h else config
    closure = torus_closure(theta, cfg)
    return closure.kind == "FullTorus", closure


# ---------------------------------------------------------------------------
# sampling


def orbit_sample(theta: RealMatrix, n: int,
                 start: Optional[Sequence] = None,
                 step: Fraction = Fraction(1),
                 config: Config = DEFAULT_CONFIG) -> OrbitSample:
    """Points (x_k mod 1, Theta x_k mod 1), x_k = start + k*step*e_1.

    The default integer step samples the transversal return map; a
    fractional step walks along the leaf.  Output coordinates are exact
    fractions obtained from interval midpoints at working precision, so
    repeated runs are byte-identical.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    r, s = theta.shape
    start = [Fraction(x) for x in (start or [0] * s)]
    if len(start) != s:
        raise DimensionMismatch("start point arity mismatch")
    step = Fraction(step)
    grid = theta.eval(config.precision)
    mids = [[c.mid for c in row] for row in grid]
    points = []
    params = []
    for k in range(n):
        x = [start[j] + (k * step if j == 0 else 0) for j in range(s)]
        ys = []
        for i in range(r):
            val = sum(mids[i][j] * x[j] for j in range(s))
            ys.append(val - val.__floor__())
        xs = [xi - xi.__floor__() for xi in x]
        points.append(tuple(xs + ys))
        params.append(x[0])
    return OrbitSample(points=points, n=n, start=start, step=step,
                       params=params)


def star_discrepancy(values: Sequence[Fraction]) -> Fraction:
    """Exact one-dimensional star discrepancy of points in [0, 1)."""
    n = len(values)
    if n == 0:
        raise ValueError("empty sample")
    xs = sorted(Fraction(v) for v in values)
    best = Fraction(0)
    for i, x in enumerate(xs):
        best = max(best, Fraction(i + 1, n) - x, x - Fraction(i, n))
    return best


@dataclass
class CoveringStage:
    """One stage of a covering tower: (x, y) -> (x, n*y) pointwise."""

    n: int
    source: OrbitSample
    image: List[Tuple[Fraction, ...]]
    verified: bool
    max_defect: Fraction

    def to_json(self) -> dict:
        return {"n": self.n, "verified": self.verified,
                "max_defect": str(self.max_defect),
                "points": len(self.image)}


def covering_tower(theta: RealOracle, ns: Sequence[int],
                   sample_size: int = 64,
                   config: Config = DEFAULT_CONFIG) -> List[CoveringStage]:
    """For each n, map an orbit sample of the theta/n foliation through
    (x, y) -> (x, n*y) and verify the image lies on the theta leaf mod 1.
    """
    if not ns:
        raise ValueError("ns must be nonempty")
    stages = []
    base = RealMatrix([[theta]])
    base_grid = base.eval(config.precision)[0][0].mid
    for n in ns:
        n = int(n)
        if n < 1:
            raise ValueError("covering degrees must be positive")
        small = RealMatrix([[theta if n == 1
                             else MulRationalOracle(theta, Fraction(1, n))]])
        sample = orbit_sample(small, sample_size, config=config)
        image = []
        defect = Fraction(0)
        for (x, y), t in zip(sample.points, sample.params):
            ny = (n * y) - (n * y).__floor__()
            image.append((x, ny))
            target = base_grid * t
            d = abs(ny - (target - target.__floor__()))
            d = min(d, 1 - d)
            defect = max(defect, d)
        tol = Fraction(1, 1 << (config.precision // 2))
        stages.append(CoveringStage(n=n, source=sample, image=image,
                                    verified=defect <= tol,
                                    max_defect=defect))
    return stages


# ---------------------------------------------------------------------------
# rendering


def render(sample: OrbitSample, fmt: str,
           project: Optional[Tuple[int, int]] = None) -> str:
    """CSV (all coordinates) or SVG (unit-square dot chart) for a sample.

    Output is a deterministic function of the sample and options.
    """
    if fmt == "csv":
        return _render_csv(sample)
    if fmt == "svg":
        return _render_svg(sample, project)
    raise ValueError(f"unknown format {fmt!r}")


def _render_csv(sample: OrbitSample) -> str:
    dim = len(sample.points[0]) if sample.points else \
        len(sample.start) + 1
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k"] + [f"x{i + 1}" for i in range(dim)])
    for k, p in enumerate(sample.points):
        writer.writerow([k] + [f"{float(c):.12f}" for c in p])
    return buf.getvalue()


def _render_svg(sample: OrbitSample,
                project: Optional[Tuple[int, int]]) -> str:
    if not sample.points:
        dim = 0
    else:
        dim = len(sample.points[0])
    if project is None:
        if dim > 2:
            raise UnsupportedProjection(
                "dimension > 2 requires an explicit projection pair")
        project = (0, 1) if dim >= 2 else (0, 0)
    i, j = project
    if sample.points and (i >= dim or j >= dim):
        raise UnsupportedProjection(f"projection {project} out of range")
    size = 512
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for p in sample.points:
        cx = float(p[i]) * size
        cy = (1 - float(p[j])) * size
        lines.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="1.5" '
                     f'fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
