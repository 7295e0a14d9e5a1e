"""Command-line front end: value tables, verification suites, path dumps.

Exit codes: 0 on success, 1 when a verification suite reports an identity
failure, 2 on usage errors or budget violations.  Data output is byte
deterministic; timing lines are segregated behind a comment marker.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import closedforms as cf
from .bijections import francon_viennot, lift_append_one
from .errors import BudgetExceededError, check_budget
from .permutations import Permutation, stat_vector
from .poly import Poly
from .verify import SUITES, render_reports, run_suites

TABLE_KINDS = ("etangent", "esecant", "A", "B", "eulerian", "touchard")

# Closed-form tables stay exact at any size; caps keep runtimes sane.
TABLE_BUDGETS = {
    "etangent": 40,
    "esecant": 40,
    "A": 24,
    "B": 24,
    "eulerian": 12,
    "touchard": 40,
}


def _table_entries(kind: str, n_max: int) -> list[tuple[str, Poly]]:
    if kind == "etangent":
        return [(f"E_{2 * n + 1}", cf.q_tangent_closed(n)) for n in range(n_max + 1)]
    if kind == "esecant":
        return [(f"E_{2 * n}", cf.q_secant_closed(n)) for n in range(n_max + 1)]
    if kind == "A":
        return [(f"A_{n}", cf.q_eulerian_closed(n)) for n in range(n_max + 1)]
    if kind == "B":
        return [(f"B_{n}", cf.q_derangement_closed(n)) for n in range(n_max + 1)]
    if kind == "touchard":
        return [(f"T_{n}", cf.touchard_riordan(n)) for n in range(n_max + 1)]
    entries = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            entries.append((f"Ehat_{k},{n}", cf.q_eulerian_number_closed(k, n)))
    return entries


def cmd_table(args: argparse.Namespace) -> int:
    kind = args.kind
    try:
        check_budget(args.n_max, TABLE_BUDGETS[kind], "n-max")
        if args.n_max < 0:
            raise BudgetExceededError("n-max must be nonnegative")
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    entries = _table_entries(kind, args.n_max)
    if args.format == "text":
        for label, poly in entries:
            print(f"{label} = {poly}")
    elif args.format == "json":
        doc = {
            "kind": kind,
            "entries": [
                {"index": i, "label": label, "poly": poly.to_json_obj()}
                for i, (label, poly) in enumerate(entries)
            ],
        }
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print("n,coef,yExp,qExp")
        for i, (_, poly) in enumerate(entries):
            for ye, qe, c in poly.terms():
                print(f"{i},{c},{ye},{qe}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    try:
        reports = run_suites(suites, n_max=args.n_max, seed=args.seed, jobs=args.jobs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render_reports(reports))
    return 0 if all(r.passed for r in reports) else 1


def cmd_bijection(args: argparse.Namespace) -> int:
    try:
        perm = Permutation.parse(args.permutation)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    image = francon_viennot(perm)
    sv = stat_vector(perm)
    lifted = lift_append_one(perm)
    print(image.path.dump())
    print(f"stats: wex={sv.wex} asc={sv.asc} cr={sv.cr} 31-2={sv.p312} fix={sv.fix}")
    if all(v <= 9 for v in lifted):
        print("tilde: " + "".join(str(v) for v in lifted))
    else:
        print("tilde: " + ",".join(str(v) for v in lifted))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeuler",
        description="Exact q-Euler-number toolkit: tables, identity verification, path dumps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="print a value table")
    p_table.add_argument("kind", choices=TABLE_KINDS)
    p_table.add_argument("--n-max", type=int, default=5)
    p_table.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run identity-verification suites")
    p_verify.add_argument("suite", choices=("all",) + SUITES)
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_bij = sub.add_parser("bijection", help="dump the path image of a permutation")
    p_bij.add_argument("permutation", help="one-line digits or comma-separated values")
    p_bij.set_defaults(func=cmd_bijection)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
