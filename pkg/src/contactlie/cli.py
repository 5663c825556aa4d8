"""Command-line front end.

Subcommands: validate, bracket, jacobi, invariants, locfin, build-iso,
verify-iso, oracle-compare.  Reports go to stdout and are byte-stable
for fixed inputs and seed; wall-clock timing goes to stderr.  Exit
codes: 0 all checks pass, 1 a check failed, 2 parse or usage error.
"""

import argparse
import json
import random
import sys
import time

from .algebra import ContactAlgebra
from .analysis import ad_orbit, classify_locfin
from .classical_oracle import compare_with_normalized, monomials_up_to
from .classical_oracle import Poly, dk_map, verify_dk_homomorphism
from .errors import ContactLieError
from .fileformats import (
    config_digest,
    element_literal,
    load_certificate,
    load_config,
    parse_element_literal,
)
from .isomorphism import (
    build_theta,
    compare_invariants,
    invariant_summary,
    validate_automorphism,
    verify_homomorphism,
)
from .lattice import validate_config
from .report import Report
from .sampling import sample_element, sample_monomial


def _read_arg_or_file(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read()
    return text


def _echo(cmd, cfg=None, **params):
    lines = [f"command: {cmd}"]
    if cfg is not None:
        lines.append(f"config: {config_digest(cfg)}")
    for k, v in params.items():
        lines.append(f"{k}: {v}")
    return lines


def cmd_validate(args):
    cfg = load_config(args.config)
    rep = validate_config(cfg)
    print("\n".join(_echo("validate", cfg)))
    print(rep.render())
    return 0 if rep.ok else 1


def cmd_bracket(args):
    cfg = load_config(args.config)
    algebra = ContactAlgebra(cfg)
    u = parse_element_literal(algebra, _read_arg_or_file(args.u))
    v = parse_element_literal(algebra, _read_arg_or_file(args.v))
    w = algebra.bracket(u, v)
    print("\n".join(_echo("bracket", cfg)))
    print(f"u: {u.pretty()}")
    print(f"v: {v.pretty()}")
    print(f"bracket: {w.pretty()}")
    print(f"literal: {element_literal(w)}")
    return 0


def cmd_jacobi(args):
    cfg = load_config(args.config)
    algebra = ContactAlgebra(cfg)
    rng = random.Random(args.seed)
    rep = Report(title="bracket laws")
    bad_skew = bad_jacobi = None
    for _ in range(args.samples):
        u = sample_element(rng, algebra)
        v = sample_element(rng, algebra)
        if not (algebra.bracket(u, v) + algebra.bracket(v, u)).is_zero:
            bad_skew = (u, v)
            break
    rep.add("skew-symmetry", bad_skew is None,
            f"{args.samples} pairs"
            + ("" if bad_skew is None else
               f"; counterexample u={bad_skew[0].pretty()} v={bad_skew[1].pretty()}"))
    for _ in range(args.samples):
        u = sample_element(rng, algebra)
        v = sample_element(rng, algebra)
        w = sample_element(rng, algebra)
        total = (algebra.bracket(algebra.bracket(u, v), w)
                 + algebra.bracket(algebra.bracket(v, w), u)
                 + algebra.bracket(algebra.bracket(w, u), v))
        if not total.is_zero:
            bad_jacobi = (u, v, w)
            break
    rep.add("jacobi", bad_jacobi is None,
            f"{args.samples} triples"
            + ("" if bad_jacobi is None else "; counterexample found"))
    print("\n".join(_echo("jacobi", cfg, seed=args.seed, samples=args.samples)))
    print(rep.render())
    return 0 if rep.ok else 1


def _summary_lines(tag, summary):
    return [f"{tag}.{k}: {v}" for k, v in summary.items()]


def cmd_invariants(args):
    cfg = load_config(args.config)
    summary = invariant_summary(cfg)
    print("\n".join(_echo("invariants", cfg)))
    print("\n".join(_summary_lines("summary", summary)))
    if args.config2:
        cfg2 = load_config(args.config2)
        summary2 = invariant_summary(cfg2)
        print(f"config2: {config_digest(cfg2)}")
        print("\n".join(_summary_lines("summary2", summary2)))
        equal, diffs = compare_invariants(summary, summary2)
        if equal:
            print("verdict: summaries equal (inconclusive without a certificate)")
        else:
            print(f"verdict: non-isomorphic (differ in {', '.join(diffs)})")
    return 0


def cmd_locfin(args):
    cfg = load_config(args.config)
    algebra = ContactAlgebra(cfg)
    u = parse_element_literal(algebra, _read_arg_or_file(args.element))
    rng = random.Random(args.seed)
    print("\n".join(_echo("locfin", cfg, seed=args.seed, cap=args.cap,
                          samples=args.samples)))
    print(f"element: {u.pretty()}")
    for key, _ in u.terms():
        families = sorted(classify_locfin(cfg, key)) or ["none"]
        print(f"term-class {algebra.monomial(key.alpha, key.exps).pretty()}: "
              + ",".join(families))
    for idx in range(args.samples):
        v = sample_monomial(rng, algebra)
        report = ad_orbit(algebra, u, v, args.cap)
        print(f"orbit[{idx}] target={v.pretty()} dims={list(report.dims)} "
              f"verdict={report.verdict}({report.steps})")
    return 0


def cmd_build_iso(args):
    cfg = load_config(args.config)
    cfg2 = load_config(args.config2)
    aut = load_certificate(args.cert, cfg.layout)
    rep = validate_automorphism(aut, cfg, cfg2)
    print("\n".join(_echo("build-iso", cfg)))
    print(f"config2: {config_digest(cfg2)}")
    print(rep.render())
    if not rep.ok:
        return 1
    theta = build_theta(aut, cfg, cfg2)
    algebra = theta.source
    for gi, g in enumerate(cfg.gamma.generators):
        img = theta.apply(algebra.x(g))
        print(f"image x^gen[{gi}]: {img.pretty()}")
    return 0


def cmd_verify_iso(args):
    cfg = load_config(args.config)
    cfg2 = load_config(args.config2)
    aut = load_certificate(args.cert, cfg.layout)
    theta = build_theta(aut, cfg, cfg2)
    rep = verify_homomorphism(theta, samples=args.samples, seed=args.seed)
    print("\n".join(_echo("verify-iso", cfg, seed=args.seed,
                          samples=args.samples)))
    print(f"config2: {config_digest(cfg2)}")
    print(rep.render())
    return 0 if rep.ok else 1


def cmd_oracle_compare(args):
    rep = compare_with_normalized(args.k, args.cap)
    n = 2 * args.k + 1
    monos = monomials_up_to(n, args.cap)
    bad = None
    for e1 in monos:
        f = Poly.monomial(n, e1)
        for e2 in monos:
            if not verify_dk_homomorphism(f, Poly.monomial(n, e2), args.k):
                bad = (e1, e2)
                break
        if bad:
            break
    rep.add("field-lift-agreement", bad is None,
            f"{len(monos) ** 2} monomial pairs"
            + (f"; first mismatch {bad}" if bad else ""))
    print("\n".join(_echo("oracle-compare", k=args.k, cap=args.cap)))
    print(rep.render())
    return 0 if rep.ok else 1


def make_parser():
    parser = argparse.ArgumentParser(
        prog="contactlie",
        description="exact calculator and verifier for generalized contact "
                    "Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a configuration file")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bracket", help="bracket of two element literals")
    p.add_argument("config")
    p.add_argument("u", help="element literal JSON or @file")
    p.add_argument("v", help="element literal JSON or @file")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jacobi", help="seeded bracket-law property run")
    p.add_argument("config")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("invariants", help="isomorphism-invariant summary")
    p.add_argument("config")
    p.add_argument("config2", nargs="?", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("locfin", help="bounded adjoint-orbit sweep")
    p.add_argument("config")
    p.add_argument("--element", required=True, help="element literal or @file")
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_locfin)

    p = sub.add_parser("build-iso", help="build a certificate map")
    p.add_argument("config")
    p.add_argument("config2")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_build_iso)

    p = sub.add_parser("verify-iso", help="verify a certificate map")
    p.add_argument("config")
    p.add_argument("config2")
    p.add_argument("--cert", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_iso)

    p = sub.add_parser("oracle-compare",
                       help="compare against the polynomial model")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    start = time.monotonic()
    try:
        code = args.func(args)
    except (ContactLieError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        elapsed = time.monotonic() - start
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
