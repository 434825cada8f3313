"""Command-line front end.

Subcommands: eval, ber, integrate, fourier, bch-separate, verify, report.
Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import liealg, parser
from .berezin import FiberSplit, berezin_integral
from .grassmann import GrassmannElement
from .repharness.report import all_passed, summarize
from .repharness.verify import (
    DEFAULT_GRID_L,
    DEFAULT_GRID_N,
    DEFAULT_QUAD_TOL,
    verify,
)
from .scalars import RINGS
from .supermatrix import SuperMatrix, berezinian, pi_berezinian


def build_arg_parser():
    top = argparse.ArgumentParser(
        prog="superalg",
        description="Grassmann algebra arithmetic and super-representation checks",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_expr_flags(p):
        p.add_argument("expression", help="expression in th1..thN")
        p.add_argument("--n", type=int, default=2, help="generator count (<= 16)")
        p.add_argument(
            "--coeff",
            choices=sorted(RINGS),
            default="rational",
            help="coefficient ring",
        )
        p.add_argument("--output", choices=("text", "json"), default="text")

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    add_expr_flags(p_eval)

    p_int = sub.add_parser("integrate", help="Berezin integral of an expression")
    add_expr_flags(p_int)
    p_int.add_argument(
        "--fiber",
        default=None,
        help="comma-separated fiber indices (default: all generators)",
    )

    p_fourier = sub.add_parser(
        "fourier", help="Fermionic Fourier transform of an expression"
    )
    add_expr_flags(p_fourier)

    for name, helptext in (
        ("ber", "Berezinian of a supermatrix (JSON on stdin or --matrix)"),
        ("piber", "pi-Berezinian of a supermatrix"),
    ):
        p_mat = sub.add_parser(name, help=helptext)
        p_mat.add_argument("--matrix", default=None, help="path to the JSON file")
        p_mat.add_argument(
            "--coeff", choices=sorted(RINGS), default="rational"
        )
        p_mat.add_argument("--output", choices=("text", "json"), default="text")

    p_bch = sub.add_parser(
        "bch-separate",
        help="even/odd separation of exp(X) exp(Y) for random odd X, Y",
    )
    p_bch.add_argument(
        "--algebra",
        default="osp12",
        help="osp12, axi-beta or heisenberg-like",
    )
    p_bch.add_argument("--m", type=int, default=2, help="odd dimension for presets")
    p_bch.add_argument("--seed", type=int, default=0)
    p_bch.add_argument("--output", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="run the example verifications")
    p_verify.add_argument(
        "example", choices=("heisenberg", "axibeta", "osp12", "all")
    )
    _add_harness_flags(p_verify)

    p_report = sub.add_parser(
        "report", help="run every example and print the JSON report"
    )
    _add_harness_flags(p_report)
    return top


def _add_harness_flags(p):
    p.add_argument("--m", type=int, default=2, help="odd dimension")
    p.add_argument("--k", default="1", help="central frequency (rational)")
    p.add_argument("--coeff", choices=sorted(RINGS), default="crational")
    p.add_argument("--grid-N", type=int, default=DEFAULT_GRID_N, dest="grid_n")
    p.add_argument("--grid-L", type=float, default=DEFAULT_GRID_L, dest="grid_l")
    p.add_argument("--tol", type=float, default=DEFAULT_QUAD_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--workers", type=int, default=1)


def _emit_element(element, output):
    if output == "json":
        print(json.dumps(element.to_json()))
    else:
        print(repr(element))


def _load_matrix(args):
    if args.matrix:
        with open(args.matrix, encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.load(sys.stdin)
    return SuperMatrix.from_json(data, RINGS[args.coeff])


def _cmd_expr(args, transform):
    tree = parser.parse(args.expression, args.n)
    element = parser.evaluate(tree, args.n, args.coeff)
    _emit_element(transform(element), args.output)
    return 0


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args):
    if args.command == "eval":
        return _cmd_expr(args, lambda e: e)
    if args.command == "integrate":
        def integrate(element):
            if args.fiber:
                fiber = tuple(int(s) for s in args.fiber.split(","))
            else:
                fiber = tuple(range(1, element.n + 1))
            return berezin_integral(element, FiberSplit(element.n, fiber))
        return _cmd_expr(args, integrate)
    if args.command == "fourier":
        if args.coeff not in ("crational", "cf64"):
            print("error: fourier needs a complex ring", file=sys.stderr)
            return 2
        return _cmd_expr(
            args, lambda e: parser._call("fourier", e)
        )
    if args.command in ("ber", "piber"):
        matrix = _load_matrix(args)
        fn = berezinian if args.command == "ber" else pi_berezinian
        _emit_element(fn(matrix), args.output)
        return 0
    if args.command == "bch-separate":
        return _cmd_bch(args)
    if args.command == "verify":
        return _cmd_verify(args, args.example)
    if args.command == "report":
        args.output = "json"
        return _cmd_verify(args, "all")
    raise ValueError(f"unknown command {args.command!r}")


def _cmd_bch(args):
    from .scalars import RATIONAL

    alg = liealg.preset(args.algebra, m=args.m)
    rng = random.Random(args.seed)
    n = min(2 * alg.m + 2, 10)
    ring = RATIONAL

    def random_odd():
        out = GrassmannElement.zero(n, ring)
        for mask in range(1, 1 << n):
            if mask.bit_count() % 2 and rng.random() < 0.4:
                out = out + GrassmannElement.monomial(
                    n, ring, mask, Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
                )
        return out

    def random_element():
        coeffs = []
        for i in range(alg.dim):
            if i < alg.d:
                coeffs.append(GrassmannElement.zero(n, ring))
            else:
                coeffs.append(random_odd())
        return liealg.LieElement(alg, coeffs)

    x, y = random_element(), random_element()
    b0, b1 = liealg.separate_even_odd(x, y)
    payload = {
        "algebra": alg.name,
        "seed": args.seed,
        "B0": [c.to_json() for c in b0.coeffs],
        "B1": [c.to_json() for c in b1.coeffs],
    }
    if args.algebra == "osp12":
        rep = liealg.osp12_matrix_rep(n, ring)
        lhs = rep.exp(x) * rep.exp(y)
        rhs = rep.exp(b0) * rep.exp(x + y + b1)
        payload["exp_identity_exact"] = (lhs - rhs).max_abs() == 0
    if args.output == "json":
        print(json.dumps(payload))
    else:
        print(f"algebra: {payload['algebra']}  seed: {payload['seed']}")
        print(f"B0: {b0!r}")
        print(f"B1: {b1!r}")
        if "exp_identity_exact" in payload:
            print(f"exp identity exact: {payload['exp_identity_exact']}")
    return 0


def _cmd_verify(args, example):
    reports = verify(
        example,
        m=args.m,
        k=Fraction(args.k),
        grid_n=args.grid_n,
        grid_l=args.grid_l,
        tol=args.tol,
        seed=args.seed,
        workers=args.workers,
    )
    if args.output == "json":
        print(json.dumps([r.to_json() for r in reports]))
    else:
        print(summarize(reports))
    return 0 if all_passed(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
