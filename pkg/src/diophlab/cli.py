"""Command-line surface: every subcommand prints a JSON document with the
effective configuration embedded, so runs are reproducible byte for byte.

Exit codes: 0 success, 2 usage error, 3 precondition violation, 4 a
bound, cap, or precision budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import dagroups, foliation, matrixdioph, numfield, polyapprox, rigidity
from .config import Config, DEFAULT_CONFIG, load_config
from .errors import (DimensionMismatch, DiophlabError,
                     EnumerationCapExceeded, KRational, LengthMismatch,
                     NotAutomorphism, NotPositive, PrecisionInsufficient,
                     RationalTheta, SearchExhausted, UnsupportedProjection,
                     WitnessNotFound, WrongInstanceShape, ZeroTheta)
from .intervals import Interval
from .lattice import integer_relation, simultaneous_approx
from .oracles import RealOracle, parse_oracle

_PRECONDITION = (NotPositive, KRational, RationalTheta, ZeroTheta,
                 WrongInstanceShape, DimensionMismatch, LengthMismatch,
                 NotAutomorphism, UnsupportedProjection, ValueError)
_EXHAUSTED = (WitnessNotFound, SearchExhausted, EnumerationCapExceeded,
              PrecisionInsufficient)


def _emit(payload: dict, config: Config, pretty: bool) -> int:
    payload = dict(payload)
    payload["config"] = config.to_json()
    indent = 2 if pretty else None
    print(json.dumps(payload, indent=indent, sort_keys=True))
    return 0


def _interval_json(iv: Interval) -> dict:
    return {"lo": str(iv.lo), "hi": str(iv.hi), "mid": f"{float(iv.mid):.15g}"}


def _parse_seq(text: str) -> List[int]:
    return [int(x) for x in text.strip().strip("[]").split(",") if x.strip()]


def _parse_element(k: numfield.NumberField, text: str):
    """Coordinates "3,3" or the two-term form "a+bw" for quadratic fields."""
    text = text.strip()
    if "," in text:
        return k.element([Fraction(x) for x in text.split(",")])
    if "w" in text:
        if k.degree != 2:
            raise ValueError("a+bw form needs a degree-2 field")
        a, _, rest = text.partition("+")
        b = rest.replace("w", "").strip() or "1"
        return k.element([Fraction(a.strip() or "0"), Fraction(b)])
    coords = [Fraction(text)] + [Fraction(0)] * (k.degree - 1)
    return k.element(coords)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_cf(args, config):
    theta = parse_oracle(args.theta)
    pairs, terminated = dagroups.convergents(theta, args.k, config)
    return _emit({"command": "cf",
                  "p": [str(p) for p, _ in pairs],
                  "q": [str(q) for _, q in pairs],
                  "terminated": terminated}, config, args.pretty)


def _cmd_group(args, config):
    theta = parse_oracle(args.theta)
    if args.action == "hat":
        seq = dagroups.hat_element(theta, args.stages, config=config)
        return _emit({"command": "group", "action": "hat",
                      "sequence": seq.to_json()}, config, args.pretty)
    entries = _parse_seq(args.seq)
    seq = dagroups.ApproxSequence(entries=entries)
    if args.action == "membership":
        verdict = dagroups.membership(theta, seq, config=config)
        return _emit({"command": "group", "action": "membership",
                      "verdict": verdict.to_json()}, config, args.pretty)
    if args.action == "error":
        profile = dagroups.error_term(theta, seq, config=config)
        return _emit({"command": "group", "action": "error",
                      "profile": profile.to_json()}, config, args.pretty)
    if args.action == "dual":
        swapped, inv = dagroups.dual(theta, seq, config)
        return _emit({"command": "group", "action": "dual",
                      "sequence": swapped.to_json()}, config, args.pretty)
    if args.action == "witness":
        out = dagroups.scaling_witness(theta, seq, config=config)
        return _emit({"command": "group", "action": "witness",
                      "witnesses": out}, config, args.pretty)
    raise ValueError(f"unknown group action {args.action!r}")


def _cmd_simul(args, config):
    thetas = [parse_oracle(t) for t in args.theta]
    q, duals, errs = simultaneous_approx(thetas, args.Q, config)
    return _emit({"command": "simul", "q": str(q),
                  "duals": [str(d) for d in duals],
                  "errors": [_interval_json(e) for e in errs]},
                 config, args.pretty)


def _cmd_indep(args, config):
    rows = [[parse_oracle(t) for t in row.split(";")]
            for row in args.matrix.split("|")]
    theta = matrixdioph.RealMatrix(rows)
    if args.mode == "homogeneous":
        ok, certs = matrixdioph.homogeneous_independence(theta, config)
    elif args.mode == "inhomogeneous":
        ok, certs = matrixdioph.inhomogeneous_independence(theta, config)
    elif args.mode == "rows":
        flat = [o for row in theta.rows for o in row]
        cert = integer_relation(flat, config)
        ok, certs = cert.vector is None, [cert]
    else:
        raise ValueError(f"unknown mode {args.mode!r}")
    return _emit({"command": "indep", "mode": args.mode, "independent": ok,
                  "certificates": [c.to_json() for c in certs]},
                 config, args.pretty)


def _cmd_dirichlet_k(args, config):
    k = numfield.make_field(args.field)
    theta = parse_oracle(args.theta)
    eta = _parse_element(k, args.eta)
    gamma, gamma_dual = numfield.k_dirichlet(k, theta, eta, config)
    return _emit({"command": "dirichlet-k", "field": k.name,
                  "gamma": gamma.to_json(),
                  "gamma_dual": gamma_dual.to_json(),
                  "eta": eta.to_json(),
                  "certified": True}, config, args.pretty)


def _cmd_ofield(args, config):
    k = numfield.make_field(args.field)
    if args.action == "cleardenom":
        alpha = parse_oracle(args.alpha)
        scaled, a = numfield.clear_denominator(alpha)
        return _emit({"command": "ofield", "action": "cleardenom",
                      "leading": str(a),
                      "minpoly": [str(c) for c in scaled.coeffs]},
                     config, args.pretty)
    theta = parse_oracle(args.theta)
    if args.action == "krational":
        witness = numfield.krational_test(k, theta, h=args.bound or 1000,
                                          config=config)
        return _emit({"command": "ofield", "action": "krational",
                      "witness": witness.to_json()}, config, args.pretty)
    entries = [_parse_element(k, t) for t in args.entries]
    seq = numfield.OApproxSequence(entries=entries)
    if args.action == "o-membership":
        verdict = numfield.o_membership(k, theta, seq, config=config)
        return _emit({"command": "ofield", "action": "o-membership",
                      "verdict": verdict.to_json()}, config, args.pretty)
    if args.action == "trace":
        verdict = numfield.o_membership(k, theta, seq, config=config)
        seq.duals = verdict.duals
        pushed = numfield.trace_push(k, seq, config)
        return _emit({"command": "ofield", "action": "trace",
                      "sequence": pushed.to_json()}, config, args.pretty)
    if args.action == "galois":
        sigma = [[Fraction(x) for x in row.split(",")]
                 for row in args.sigma.split(";")]
        out = numfield.galois_apply(k, sigma, seq)
        return _emit({"command": "ofield", "action": "galois",
                      "entries": [e.to_json() for e in out.entries]},
                     config, args.pretty)
    if args.action == "conjpoly":
        verdict = numfield.o_membership(k, theta, seq, config=config)
        seq.duals = verdict.duals
        polys = numfield.conjugate_poly(k, seq)
        return _emit({"command": "ofield", "action": "conjpoly",
                      "polynomials": [p.to_json() for p in polys]},
                     config, args.pretty)
    raise ValueError(f"unknown ofield action {args.action!r}")


def _cmd_minpoly(args, config):
    theta = parse_oracle(args.theta)
    rel = polyapprox.minimal_polynomial(theta, args.dmax, args.hmax, config)
    return _emit({"command": "minpoly", "result": rel.to_json()},
                 config, args.pretty)


def _cmd_algdep(args, config):
    thetas = [parse_oracle(t) for t in args.theta]
    rel = polyapprox.algebraic_dependence(thetas, args.dmax, args.hmax,
                                          config=config)
    return _emit({"command": "algdep", "result": rel.to_json()},
                 config, args.pretty)


def _cmd_foliate(args, config):
    rows = [[parse_oracle(t) for t in row.split(";")]
            for row in args.matrix.split("|")]
    theta = matrixdioph.RealMatrix(rows)
    if args.action == "classify":
        fol = foliation.classify_leaves(theta, args.bound, config)
        return _emit({"command": "foliate", "action": "classify",
                      "result": fol.to_json()}, config, args.pretty)
    if args.action == "minimal":
        minimal, closure = foliation.minimality(theta, args.bound, config)
        return _emit({"command": "foliate", "action": "minimal",
                      "minimal": minimal, "closure": closure.to_json()},
                     config, args.pretty)
    if args.action == "orbit":
        sample = foliation.orbit_sample(theta, args.n, config=config)
        disc = foliation.star_discrepancy(sample.coordinate(
            len(sample.points[0]) - 1))
        return _emit({"command": "foliate", "action": "orbit",
                      "points": len(sample),
                      "discrepancy": f"{float(disc):.6f}"},
                     config, args.pretty)
    if args.action == "tower":
        ns = _parse_seq(args.ns)
        stages = foliation.covering_tower(theta.rows[0][0], ns,
                                          config=config)
        return _emit({"command": "foliate", "action": "tower",
                      "stages": [s.to_json() for s in stages]},
                     config, args.pretty)
    if args.action == "render":
        sample = foliation.orbit_sample(theta, args.n, config=config)
        project = None
        if args.project:
            i, j = args.project.split(",")
            project = (int(i), int(j))
        doc = foliation.render(sample, args.format, project)
        with open(args.out, "w") as fh:
            fh.write(doc)
        return _emit({"command": "foliate", "action": "render",
                      "out": args.out, "bytes": len(doc)},
                     config, args.pretty)
    raise ValueError(f"unknown foliate action {args.action!r}")


def _cmd_rigidity(args, config):
    thetas = [parse_oracle(t) for t in args.theta]
    if args.action == "ld":
        verdict = rigidity.ld_check(thetas, args.field, h=args.hmax,
                                    config=config)
        return _emit({"command": "rigidity", "action": "ld",
                      "result": verdict.to_json()}, config, args.pretty)
    if args.action == "ad":
        verdict = rigidity.ad_check(thetas, dmax=args.dmax, hmax=args.hmax,
                                    config=config)
        return _emit({"command": "rigidity", "action": "ad",
                      "result": verdict.to_json()}, config, args.pretty)
    if args.action == "pullback":
        report = rigidity.graph_pullback(thetas, dmax=args.dmax,
                                         hmax=args.hmax, config=config)
        return _emit({"command": "rigidity", "action": "pullback",
                      "result": report.to_json()}, config, args.pretty)
    if args.action == "harness":
        report = rigidity.conjecture_harness(args.name, thetas,
                                             dmax=args.dmax,
                                             hmax=args.hmax, config=config)
        return _emit({"command": "rigidity", "action": "harness",
                      "result": report.to_json()}, config, args.pretty)
    raise ValueError(f"unknown rigidity action {args.action!r}")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diophlab",
        description="Certified diophantine approximation toolbox")
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument("--precision", type=int)
    parser.add_argument("--tau", type=str)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--pretty", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="continued-fraction convergents")
    p.add_argument("--theta", required=True)
    p.add_argument("-k", type=int, default=8)
    p.set_defaults(func=_cmd_cf)

    p = sub.add_parser("group", help="sequence group operations")
    p.add_argument("--theta", required=True)
    p.add_argument("--seq", default="")
    p.add_argument("--action", default="membership",
                   choices=["membership", "error", "dual", "witness", "hat"])
    p.add_argument("--stages", type=int, default=3)
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("simul", help="simultaneous approximation")
    p.add_argument("--theta", action="append", required=True)
    p.add_argument("-Q", type=int, required=True)
    p.set_defaults(func=_cmd_simul)

    p = sub.add_parser("indep", help="matrix independence certificates")
    p.add_argument("--matrix", required=True,
                   help="rows split by |, entries by ;")
    p.add_argument("--mode", default="homogeneous",
                   choices=["homogeneous", "inhomogeneous", "rows"])
    p.set_defaults(func=_cmd_indep)

    p = sub.add_parser("dirichlet-k", help="pigeonhole over a number field")
    p.add_argument("--field", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--eta", required=True)
    p.set_defaults(func=_cmd_dirichlet_k)

    p = sub.add_parser("ofield", help="field-coefficient approximation")
    p.add_argument("--field", default="Q")
    p.add_argument("--theta", default="pi")
    p.add_argument("--action", default="o-membership",
                   choices=["o-membership", "trace", "galois", "conjpoly",
                            "krational", "cleardenom"])
    p.add_argument("--entries", action="append", default=[])
    p.add_argument("--sigma", default="")
    p.add_argument("--alpha", default="")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=_cmd_ofield)

    p = sub.add_parser("minpoly", help="minimal polynomial search")
    p.add_argument("--theta", required=True)
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--hmax", type=int)
    p.set_defaults(func=_cmd_minpoly)

    p = sub.add_parser("algdep", help="algebraic dependence search")
    p.add_argument("--theta", action="append", required=True)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--hmax", type=int)
    p.set_defaults(func=_cmd_algdep)

    p = sub.add_parser("foliate", help="Kronecker foliation tools")
    p.add_argument("--matrix", required=True)
    p.add_argument("--action", default="classify",
                   choices=["classify", "minimal", "orbit", "tower",
                            "render"])
    p.add_argument("--bound", type=int)
    p.add_argument("-n", type=int, default=1000)
    p.add_argument("--ns", default="1,2")
    p.add_argument("--format", default="csv", choices=["csv", "svg"])
    p.add_argument("--project")
    p.add_argument("--out", default="orbit.csv")
    p.set_defaults(func=_cmd_foliate)

    p = sub.add_parser("rigidity", help="dependence relations and harnesses")
    p.add_argument("--theta", action="append", required=True)
    p.add_argument("--action", default="ld",
                   choices=["ld", "ad", "pullback", "harness"])
    p.add_argument("--field", default="Q")
    p.add_argument("--name", default="schanuel",
                   choices=["baker", "lw", "logconj", "schanuel"])
    p.add_argument("--dmax", type=int)
    p.add_argument("--hmax", type=int)
    p.set_defaults(func=_cmd_rigidity)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    overrides = {}
    if args.precision is not None:
        overrides["precision"] = args.precision
    if args.tau is not None:
        overrides["tau"] = Fraction(args.tau)
    if args.seed is not None:
        overrides["seed"] = args.seed
    try:
        config = load_config(args.config, overrides)
        return args.func(args, config)
    except _EXHAUSTED as exc:
        print(json.dumps({"error": str(exc),
                          "kind": type(exc).__name__}), file=sys.stderr)
        return 4
    except _PRECONDITION as exc:
        print(json.dumps({"error": str(exc),
                          "kind": type(exc).__name__}), file=sys.stderr)
        return 3
    except DiophlabError as exc:
        print(json.dumps({"error": str(exc),
                          "kind": type(exc).__name__}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
