"""Command-line front end: tabulation, limits, Edgeworth comparisons,
Monte Carlo validation, convergence studies, and the acceptance suite.

Exit codes: 0 success, 1 validation or numerical failure, 2 usage error.
All numeric output uses 17 significant digits, '.' decimals and '\\n'
newlines, so files re-parse to full precision and identical configurations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, airy, finite_n, mc
from .acceptance import edgeworth_comparison, mc_cdf, run_criteria
from .errors import NumericalError, ParameterError

SQRT2 = math.sqrt(2.0)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _emit(stream, command: str, config: dict, header, rows, fmt: str) -> None:
    if fmt == "csv":
        stream.write(",".join(header) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        payload = {
            "command": command,
            "config": config,
            "version": __version__,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")


def _check_parity(ensemble: str, n: int) -> None:
    if ensemble == "goe" and n % 2 != 0:
        raise ParameterError(
            f"the orthogonal closed form requires even n (got {n})"
        )
    if ensemble == "gse" and n % 2 != 1:
        raise ParameterError(
            f"the symplectic closed form requires odd n (got {n})"
        )


def cmd_tabulate(args, stream) -> int:
    _check_parity(args.ensemble, args.n)
    grid = np.linspace(args.t_min, args.t_max, args.steps)
    rows = []
    for x in grid:
        x = float(x)
        if args.ensemble == "gue":
            value = finite_n.f_n2(args.n, x, args.method)
        elif args.ensemble == "goe":
            value = finite_n.f_n1(args.n, x)
        else:
            # grid is in the symplectic variable u unless --gue-scale is given
            u = x / SQRT2 if args.gue_scale else x
            value = finite_n.f_n4(args.n, u)
        rows.append((x, value))
    config = {
        "ensemble": args.ensemble, "n": args.n, "t_min": args.t_min,
        "t_max": args.t_max, "steps": args.steps, "method": args.method,
        "gue_scale": args.gue_scale,
    }
    _emit(stream, "tabulate", config, ("t", "F"), rows, args.format)
    return 0


def cmd_limit(args, stream) -> int:
    law = {"gue": lambda s: airy.f2_limit(s, "determinant"),
           "goe": airy.f1_limit, "gse": airy.f4_limit}[args.ensemble]
    grid = np.linspace(args.s_min, args.s_max, args.steps)
    rows = [(float(s), law(float(s))) for s in grid]
    config = {"ensemble": args.ensemble, "s_min": args.s_min,
              "s_max": args.s_max, "steps": args.steps}
    _emit(stream, "limit", config, ("s", "F"), rows, args.format)
    return 0


def cmd_edgeworth(args, stream) -> int:
    _check_parity(args.ensemble, args.n)
    if args.s_min < airy.S_MIN or args.s_max > airy.S_MAX:
        raise ParameterError(
            f"s-window [{args.s_min}, {args.s_max}] outside supported [{airy.S_MIN}, {airy.S_MAX}]"
        )
    builder = {"gue": airy.edgeworth_f2, "goe": airy.edgeworth_f1_sq,
               "gse": airy.edgeworth_f4_sq}[args.ensemble]
    rows = []
    for s in np.linspace(args.s_min, args.s_max, args.steps):
        s = float(s)
        truth, _, _ = edgeworth_comparison(args.ensemble, args.n, args.c, s)
        r = builder(args.n, args.c, s)
        rows.append(
            (s, truth, r.leading, r.order_one_third, r.order_two_thirds,
             r.combined, r.combined - truth)
        )
    config = {"ensemble": args.ensemble, "n": args.n, "c": args.c,
              "s_min": args.s_min, "s_max": args.s_max, "steps": args.steps}
    header = ("s", "finite_n", "leading", "first_order", "second_order",
              "combined", "error")
    _emit(stream, "edgeworth", config, header, rows, args.format)
    return 0


def cmd_mc(args, stream) -> int:
    if args.ensemble == "goe" and args.n % 2 != 0:
        raise ParameterError(
            f"the orthogonal analytic CDF requires even n (got {args.n})"
        )
    beta = {"goe": 1, "gue": 2, "gse": 4}[args.ensemble]
    run = mc.sample_lambda_max(beta, args.n, args.samples, args.seed)
    ks = mc.ks_statistic(run, mc_cdf(args.ensemble, args.n), grid_points=201)
    crit = mc.ks_critical_1pct(args.samples)
    config = {"ensemble": args.ensemble, "n": args.n,
              "samples": args.samples, "seed": args.seed}
    rows = [(ks, crit, ks < crit)]
    _emit(stream, "mc", config, ("ks", "critical_value_1pct", "pass"), rows, args.format)
    return 0


def cmd_convergence(args, stream) -> int:
    ns = [int(v) for v in args.n_list.split(",")]
    if len(ns) < 3:
        raise ParameterError(f"need at least 3 n values, got {ns}")
    s_grid = np.linspace(args.s_min, args.s_max, args.steps)
    sup_errors = []
    for n in ns:
        worst = 0.0
        for s in s_grid:
            truth, leading, combined = edgeworth_comparison(args.ensemble, n, args.c, float(s))
            ref = combined if args.reference == "edgeworth" else leading
            worst = max(worst, abs(truth - ref))
        sup_errors.append(worst)
    rows = []
    for i, (n, err) in enumerate(zip(ns, sup_errors)):
        if i == 0:
            rate = float("nan")
        else:
            rate = math.log(err / sup_errors[i - 1]) / math.log(n / ns[i - 1])
        rows.append((n, err, rate))
    config = {"ensemble": args.ensemble, "c": args.c, "n_list": ns,
              "reference": args.reference, "s_min": args.s_min,
              "s_max": args.s_max, "steps": args.steps}
    _emit(stream, "convergence", config, ("n", "sup_error", "rate_estimate"), rows, args.format)
    return 0


def cmd_validate(args, stream) -> int:
    indices = [int(v) for v in args.criteria.split(",")] if args.criteria else None
    results = run_criteria(indices, args.tolerance_scale)
    all_pass = True
    for r in results:
        all_pass = all_pass and r.passed
        stream.write(f"criterion {r.index:2d} [{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}\n")
    stream.write("validation " + ("PASSED" if all_pass else "FAILED") + "\n")
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gemax",
        description="Largest-eigenvalue distributions of the Gaussian ensembles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ensembles=("goe", "gue", "gse")):
        p.add_argument("--ensemble", choices=ensembles, default="gue")
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("tabulate", help="finite-n CDF table")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--method", choices=("determinant", "exponential"), default="determinant")
    p.add_argument("--gue-scale", action="store_true",
                   help="tabulate the symplectic law against t = u*sqrt(2)")

    p = sub.add_parser("limit", help="limiting-law table")
    common(p)
    p.add_argument("--s-min", type=float, default=-8.0)
    p.add_argument("--s-max", type=float, default=6.0)
    p.add_argument("--steps", type=int, default=29)

    p = sub.add_parser("edgeworth", help="expansion vs finite-n truth")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--s-min", type=float, default=-3.0)
    p.add_argument("--s-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=9)

    p = sub.add_parser("mc", help="Monte Carlo KS validation")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("convergence", help="convergence-rate study")
    common(p)
    p.add_argument("--n-list", default="20,40,80,160")
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--reference", choices=("limit", "edgeworth"), default="limit")
    p.add_argument("--s-min", type=float, default=-3.0)
    p.add_argument("--s-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=9)

    p = sub.add_parser("validate", help="run the acceptance suite")
    p.add_argument("--tolerance-scale", type=float, default=1.0)
    p.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    p.add_argument("--out", default=None)
    return parser


COMMANDS = {
    "tabulate": cmd_tabulate,
    "limit": cmd_limit,
    "edgeworth": cmd_edgeworth,
    "mc": cmd_mc,
    "convergence": cmd_convergence,
    "validate": cmd_validate,
}


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    stream = stdout if stdout is not None else sys.stdout
    try:
        if args.out:
            with open(args.out, "w", newline="") as handle:
                return COMMANDS[args.command](args, handle)
        return COMMANDS[args.command](args, stream)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
