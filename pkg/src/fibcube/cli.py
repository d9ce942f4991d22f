"""Command-line interface: counting, polynomials, graphs, isomorphism,
theorem verification, and conjecture sweeps, all with JSON output.

Machine-readable JSON goes to stdout (JSON lines for the streaming
subcommands `classes` and `conjecture`, a single object otherwise);
human diagnostics go to stderr.  Exit codes: 0 success / positive
verdict, 1 negative verdict, 2 validation or resource failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import counting, cube, harness, iso, theorems, words

BUDGET_ENV_VAR = "FIBCUBE_BUDGET"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _fail(message: str) -> int:
    sys.stdout.write(json.dumps({"error": message}) + "\n")
    return 2


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fibcube",
        description="Generalized Fibonacci cubes: counting, isomorphism, and conjecture checks.",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for randomized internals (reserved)")
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"canonicalization node budget (default {iso.DEFAULT_NODE_BUDGET}, "
        f"or the {BUDGET_ENV_VAR} environment variable)",
    )
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count length-d strings avoiding a factor")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--f", type=str, required=True)
    c.add_argument("--oracle", action="store_true", help="use brute-force enumeration")

    c = sub.add_parser("poly", help="correlation polynomial of a factor")
    c.add_argument("--f", type=str, required=True)

    c = sub.add_parser("build", help="build Q_d or Q_d(f)")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--f", type=str, default=None)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--graph6", action="store_true", help="emit graph6 text")
    g.add_argument("--stats", action="store_true", help="emit order/size statistics (default)")
    c.add_argument("--out", default=None, help="write graph6 to this file, one graph per line")

    c = sub.add_parser("iso", help="decide isomorphism of Q_d(f) and Q_d(g)")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--f", type=str, required=True)
    c.add_argument("--g", type=str, required=True)

    c = sub.add_parser("verify", help="verify a theorem at one dimension")
    c.add_argument("--theorem", choices=["length", "3k1", "blocks"], required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--k", type=int, default=None, help="staircase parameter (3k1 only)")

    c = sub.add_parser("classes", help="classify factors by certificate")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--kmin", type=int, default=3)
    c.add_argument("--kmax", type=int, default=None)
    c.add_argument("--full-range", action="store_true", help="classify lengths 1..d")
    c.add_argument("--log", default=None, help="append-only JSON-lines result log (resumable)")

    c = sub.add_parser("conjecture", help="sweep a conjecture over dimensions")
    c.add_argument("--id", type=int, choices=[1, 2, 3], required=True)
    c.add_argument("--dmax", type=int, required=True)
    c.add_argument("--dmin", type=int, default=3)
    c.add_argument(
        "--budget-minutes",
        type=float,
        default=harness.DEFAULT_TIME_BUDGET_S / 60.0,
        help="wall-clock budget per dimension",
    )
    return p


def _node_budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else None


def _cmd_count(args) -> int:
    fn = counting.brute_count if args.oracle else counting.count_avoiders
    _emit({"n": fn(args.d, words.check_word(args.f))})
    return 0


def _cmd_poly(args) -> int:
    coeffs = words.autocorrelation(words.check_word(args.f))
    _emit({"coeffs": list(coeffs), "at2": words.poly_value(coeffs)})
    return 0


def _cmd_build(args) -> int:
    G = cube.build_graph(args.d, words.check_word(args.f) if args.f is not None else None)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(cube.to_graph6(G) + "\n")
    if args.graph6:
        _emit({"graph6": cube.to_graph6(G)})
    else:
        _emit(
            {
                "d": G.d,
                "f": G.forbidden,
                "n": G.n,
                "m": cube.edge_count(G),
                "degree_min": min((len(r) for r in G.neighbors), default=0),
                "degree_max": max((len(r) for r in G.neighbors), default=0),
            }
        )
    return 0


def _cmd_iso(args) -> int:
    budget = _node_budget(args)
    G = cube.build_graph(args.d, words.check_word(args.f))
    H = cube.build_graph(args.d, words.check_word(args.g))
    cert_f = iso.canonical_certificate(G, budget)
    cert_g = iso.canonical_certificate(H, budget)
    mapping = iso.are_isomorphic(G, H, budget) if cert_f == cert_g else None
    _emit(
        {
            "isomorphic": cert_f == cert_g,
            "certificate_f": cert_f,
            "certificate_g": cert_g,
            "mapping": mapping,
        }
    )
    return 0 if cert_f == cert_g else 1


def _cmd_verify(args) -> int:
    budget = _node_budget(args)
    if args.theorem == "3k1":
        if args.k is None:
            return _fail("--k is required for --theorem 3k1")
        report = theorems.theorem_3k1_report(args.k, args.d, budget)
    elif args.theorem == "blocks":
        report = theorems.theorem_blocks_report(args.d, budget)
    else:
        report = theorems.theorem_length_report(args.d, budget, jobs=args.jobs)
    ok = report["ok"]
    print("PASS" if ok else "FAIL", file=sys.stderr)
    _emit({"theorem": args.theorem, **report})
    return 0 if ok else 1


def _cmd_classes(args) -> int:
    kmin, kmax = (1, args.d) if args.full_range else (args.kmin, args.kmax)
    table = harness.isom_classes(
        args.d,
        k_min=kmin,
        k_max=kmax if kmax is not None else args.d - 1,
        jobs=args.jobs,
        node_budget=_node_budget(args),
        log_path=args.log,
    )
    for cert in sorted(table.classes):
        members = table.classes[cert]
        _emit({"certificate": cert, "k": len(members[0]), "words": members})
    print(
        f"d={table.d} lengths [{table.k_min}, {table.k_max}]: "
        f"{table.total_words} words in {len(table.classes)} classes",
        file=sys.stderr,
    )
    return 0


def _cmd_conjecture(args) -> int:
    checkers = {
        1: harness.check_conjecture_dim_minus_1,
        2: harness.check_conjecture_two_thirds,
        3: harness.check_conjecture_blocks,
    }
    checker = checkers[args.id]
    budget = _node_budget(args)
    cert_cache: dict = {}
    exit_code = 0
    for d in range(args.dmin, args.dmax + 1):
        report = checker(
            d,
            jobs=args.jobs,
            node_budget=budget,
            cert_cache=cert_cache,
            time_budget_s=args.budget_minutes * 60.0,
        )
        _emit(asdict(report))
        if report.budget_exceeded:
            return 2
        if report.verdict is False:
            exit_code = 1
    return exit_code


_HANDLERS = {
    "count": _cmd_count,
    "poly": _cmd_poly,
    "build": _cmd_build,
    "iso": _cmd_iso,
    "verify": _cmd_verify,
    "classes": _cmd_classes,
    "conjecture": _cmd_conjecture,
}


def parse_and_dispatch(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        return _fail("invalid arguments (see stderr for usage)")
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, iso.BudgetExceededError, harness.TimeBudgetExceededError) as exc:
        return _fail(str(exc))


def main(argv=None) -> int:
    return parse_and_dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
