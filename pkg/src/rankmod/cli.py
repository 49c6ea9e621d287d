"""Batch command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path

from .constraints import KINDS, ConstraintKind
from .constructions import Code, build_Casym, build_Cr, build_Csym, cardinality_Csym, lower_bound_Casym
from .ecc import METRICS, ECCCode, bounds_table, capacity_table, greedy_code, gv_lower_bound, verify_min_distance
from .enumeration import count_table, enumerate_constrained
from .errors import BudgetExceeded
from .io import format_code, format_value, read_code, rows_to_csv, rows_to_json
from .metrics import ball_table, check_sandwich, inversion_distance, kendall_tau
from .perm import Permutation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def int_spec(text: str) -> list[int]:
    """Parse ``"4"``, ``"4..8"``, ``"1,3,5"`` or mixtures like ``"1..3,7"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty integer list {text!r}")
    return out


def float_spec(text: str) -> list[float]:
    """Parse ``"0.5"``, ``"0,0.5,1"`` or an evenly spaced grid ``"start:stop:count"``."""
    if ":" in text:
        lo, hi, num = text.split(":")
        lo_f, hi_f, count = float(lo), float(hi), int(num)
        if count < 2:
            return [lo_f]
        return [lo_f + (hi_f - lo_f) * i / (count - 1) for i in range(count)]
    return [float(t) for t in text.split(",") if t.strip()]


def _emit(rows: list[dict], columns: list[str], args) -> None:
    text = rows_to_json(rows, columns) if args.format == "json" else rows_to_csv(rows, columns)
    _write(text, args.out)


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_count(args) -> int:
    ks = args.k
    rows = []
    for n in args.n:
        rows.extend(count_table([n], args.kind, ks, budget=args.budget_n, method=args.method))
    _emit(rows, ["n", "kind", "k", "count", "log2_count", "capacity_ratio"], args)
    return EXIT_OK


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "csym":
        _need(args, "n", "k")
        code = build_Csym(args.n, args.k)
        summary = f"size={len(code)} formula={cardinality_Csym(args.n, args.k)}"
    elif fam == "casym":
        _need(args, "n")
        code = build_Casym(args.n)
        lb = lower_bound_Casym(args.n) if args.n >= 2 else 0
        summary = f"size={len(code)} lower_bound={format_value(lb)}"
    elif fam == "cr":
        _need(args, "n", "r")
        code = build_Cr(args.n, args.r)
        summary = f"size={len(code)}"
    else:
        _need(args, "n", "k", "d")
        constraint = ConstraintKind(args.kind, args.k)
        if args.n > (args.budget_n if args.budget_n is not None else _default_budget()):
            raise BudgetExceeded(f"greedy universe: n={args.n} over budget")
        universe = Code.from_members(args.n, enumerate_constrained(args.n, constraint), constraint)
        code = greedy_code(universe, args.d, args.metric)
        summary = f"size={len(code)} universe={len(universe)}"
        if args.kind == "two_neighbor" and args.metric == "inversion" and args.k < args.n:
            summary += f" gv_lower={format_value(gv_lower_bound(args.n, args.k, args.d, budget=args.budget_n))}"
    if args.out:
        _write(format_code(code), args.out)
        print(summary)
    else:
        sys.stdout.write(format_code(code))
        print(summary, file=sys.stderr)
    return EXIT_OK


def _default_budget() -> int:
    from .errors import default_budget

    return default_budget()


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"{args.command} {getattr(args, 'family', '')} needs {', '.join(missing)}".replace("  ", " "))


def cmd_verify(args) -> int:
    try:
        code = read_code(args.path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    base = code.base if isinstance(code, ECCCode) else code
    lines = []
    failed = False
    if base.constraint is not None:
        mask = base.check_constraint()
        bad = [Permutation._trusted(row) for row in base.array[~mask].tolist()]
        lines.append(f"members={len(base)} constraint={base.constraint.kind} k={base.constraint.k} violations={len(bad)}")
        for p in bad[:10]:
            lines.append(f"violation: {p.to_text()}")
        failed |= bool(bad)
    else:
        lines.append(f"members={len(base)} constraint=none")
    d = args.d if args.d is not None else (code.min_distance_claim if isinstance(code, ECCCode) else None)
    if d is not None:
        metric = args.metric or (code.metric if isinstance(code, ECCCode) else "inversion")
        ok, witness = verify_min_distance(ECCCode(base, d, metric))
        if ok:
            lines.append(f"min_distance d={d} metric={metric}: ok")
        else:
            a, b = witness
            dist = inversion_distance(a, b) if metric == "inversion" else kendall_tau(a, b)
            lines.append(f"min_distance d={d} metric={metric}: FAIL {a.to_text()} | {b.to_text()} at distance {dist}")
            failed = True
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_bounds(args) -> int:
    rows = []
    for n in args.n:
        ks = [k for k in (args.k or range(1, n)) if k < n]
        rows.extend(bounds_table([n], ks, args.d, budget=args.budget_n))
    _emit(rows, ["n", "k", "d", "log2_upper_A", "gv_lower", "greedy_size", "sphere_packing_upper"], args)
    return EXIT_OK


def cmd_capacity(args) -> int:
    rows = capacity_table(args.eps1, args.eps2)
    _emit(rows, ["surface", "eps1", "eps2", "value"], args)
    return EXIT_OK


def cmd_balls(args) -> int:
    _emit(ball_table(args.n, args.r), ["n", "r", "b_I", "log2_b_I"], args)
    return EXIT_OK


def cmd_distance(args) -> int:
    if args.sigma is not None or args.pi is not None:
        if args.sigma is None or args.pi is None:
            raise ValueError("distance needs both --sigma and --pi")
        s, p = Permutation.from_text(args.sigma), Permutation.from_text(args.pi)
        dm, di, holds = check_sandwich(s, p)
        row = {
            "sigma": s.to_text(),
            "pi": p.to_text(),
            "kendall": kendall_tau(s, p),
            "inversion": di,
            "manhattan": dm,
            "sandwich": holds,
        }
        _emit([row], list(row), args)
        return EXIT_OK
    if args.n is None:
        raise ValueError("distance needs --sigma/--pi or --n with --samples")
    rng = random.Random(args.seed)
    violations = 0
    lo, hi = math.inf, -math.inf
    n = args.n[0]
    for _ in range(args.samples):
        s = rng.sample(range(1, n + 1), n)
        p = rng.sample(range(1, n + 1), n)
        dm, di, holds = check_sandwich(s, p)
        violations += not holds
        if dm:
            lo, hi = min(lo, di / dm), max(hi, di / dm)
    row = {
        "n": n,
        "samples": args.samples,
        "seed": args.seed,
        "violations": violations,
        "min_dI_over_dM": lo if lo != math.inf else "",
        "max_dI_over_dM": hi if hi != -math.inf else "",
    }
    _emit([row], list(row), args)
    return EXIT_FAIL if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--budget-n", dest="budget_n", type=int, default=None,
                        help="largest n to enumerate exhaustively (default: $RANKMOD_BUDGET_N or 13)")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="rankmod", description="Constrained permutation codes for rank modulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count constrained permutations")
    p.add_argument("--kind", choices=KINDS, default="two_neighbor")
    p.add_argument("--n", type=int_spec, required=True)
    p.add_argument("--k", type=int_spec, default=None, help="default: every 1 <= k < n")
    p.add_argument("--method", choices=("dp", "backtrack", "filter"), default="dp")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("construct", parents=[common], help="build and serialise a code")
    p.add_argument("family", choices=("csym", "casym", "cr", "greedy"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--kind", choices=KINDS, default="two_neighbor")
    p.add_argument("--metric", choices=METRICS, default="inversion")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a code file")
    p.add_argument("path")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--metric", choices=METRICS, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="bounds on E(n,k,d) next to greedy codes")
    p.add_argument("--n", type=int_spec, required=True)
    p.add_argument("--k", type=int_spec, default=None)
    p.add_argument("--d", type=int_spec, default=[1, 2, 3])
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("capacity", parents=[common], help="closed-form capacities")
    p.add_argument("--eps1", type=float_spec, required=True)
    p.add_argument("--eps2", type=float_spec, default=None)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("balls", parents=[common], help="inversion ball sizes b_I(n, r)")
    p.add_argument("--n", type=int_spec, required=True)
    p.add_argument("--r", type=int_spec, default=None)
    p.set_defaults(func=cmd_balls)

    p = sub.add_parser("distance", parents=[common], help="distances between permutations")
    p.add_argument("--sigma")
    p.add_argument("--pi")
    p.add_argument("--n", type=int_spec)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_distance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
