"""Command-line front end.

Exit codes
    gen        0 written, 1 construction failed, 2 bad parameters, 3 over the order cap
    verify     0 valid cycle, 1 invalid, 2 unreadable file
    brute      0 found, 1 nothing within the limit, 2 refused or bad parameters
    relations  0 if every relation holds, 1 otherwise, 2 bad parameters
    gen-grid   0 if every cycle verifies, 1 otherwise
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Optional, Sequence

from . import cyclefile
from .constructions import ConstructionError, build_hamiltonian
from .group_core import (
    GroupParams,
    OrderCapError,
    ParameterError,
    check_relations,
    parameter_grid,
)
from .verifier import NoHamiltonianCycle, brute_force_cycle, verify_hamiltonian

DEFAULT_CAP = 10**7
BRUTE_CAP = 1000


def _stats(values: dict, kv: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if kv:
        print(" ".join(f"{k}={v}" for k, v in values.items()), file=stream)
    else:
        for k, v in values.items():
            print(f"{k:>12}: {v}", file=stream)


def _params(args) -> GroupParams:
    return GroupParams(args.d, args.e, args.n, max_order=args.max_order)


def _write_text(text: str, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    try:
        params = _params(args)
    except OrderCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    try:
        cyc = build_hamiltonian(params)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - t0
    text = cyclefile.emit(params, cyc.word, rle=args.rle, comments=[f"provenance: {cyc.provenance}"])
    _write_text(text, args.out)
    # keep stdout clean for the cycle itself when writing there
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    _stats(
        {
            "group": params.name,
            "order": params.order,
            "length": len(cyc.word),
            "provenance": cyc.provenance,
            "elapsed": f"{elapsed:.4f}",
        },
        args.kv,
        stream,
    )
    return 0


def cmd_verify(args) -> int:
    try:
        cf = cyclefile.read(args.path, max_order=args.max_order)
    except cyclefile.CycleFileError as exc:
        print(f"{args.path}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.path}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    rep = verify_hamiltonian(cf.params, None, cf.word)
    values = {
        "group": cf.params.name,
        "valid": str(rep.valid).lower(),
        "length": rep.length,
        "expected": rep.expected_length,
        "closed": str(rep.closed).lower(),
        "elapsed": f"{rep.elapsed:.4f}",
    }
    if not rep.valid:
        values["problems"] = "; ".join(rep.problems)
    _stats(values, args.kv)
    return 0 if rep.valid else 1


def cmd_brute(args) -> int:
    try:
        params = _params(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if params.order > BRUTE_CAP and not args.force:
        print(
            f"refusing to search {params.name} of order {params.order} > {BRUTE_CAP}; "
            "pass --force to insist",
            file=sys.stderr,
        )
        return 2
    try:
        word = brute_force_cycle(params, args.time_limit)
    except NoHamiltonianCycle:
        print("no-cycle-exists")
        return 1
    if word is None:
        print("none-within-limit")
        return 1
    _write_text(cyclefile.emit(params, word, rle=args.rle, comments=["provenance: brute_force"]), args.out)
    return 0


def cmd_relations(args) -> int:
    try:
        params = _params(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    results = check_relations(params)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'}  {res.name}")
    return 0 if all(r.passed for r in results) else 1


def cmd_gen_grid(args) -> int:
    from .report import plot_grid, run_grid, write_csv

    grid = parameter_grid(args.max_d, args.max_e, args.max_n, args.max_order)
    t0 = time.perf_counter()
    rows = run_grid(grid, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    if args.out in (None, "-"):
        write_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    if args.plot:
        plot_grid(rows, args.plot)
    bad = [r.group for r in rows if not r.valid]
    summary = {"groups": len(rows), "valid": len(rows) - len(bad), "elapsed": f"{elapsed:.2f}"}
    _stats(summary, args.kv, sys.stderr)
    for name in bad:
        print(f"invalid: {name}", file=sys.stderr)
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleyham",
        description="Hamiltonian cycles in Cayley graphs of G(de,e,n).",
        epilog="Parameters are given as d, e, n; the group is G(de,e,n).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def group_args(p, cap=DEFAULT_CAP):
        p.add_argument("-d", type=int, required=True)
        p.add_argument("-e", type=int, required=True)
        p.add_argument("-n", type=int, required=True)
        p.add_argument("--max-order", type=int, default=cap, help="refuse larger groups")

    p = sub.add_parser("gen", help="construct, verify and write a cycle")
    group_args(p)
    p.add_argument("--out", "-o", help="output file (default: standard output)")
    p.add_argument("--rle", action="store_true", help="run-length encode the body")
    p.add_argument("--kv", action="store_true", help="stats as one key=value line")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a cycle file")
    p.add_argument("path")
    p.add_argument("--max-order", type=int, default=DEFAULT_CAP)
    p.add_argument("--kv", action="store_true", help="stats as one key=value line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brute", help="backtracking search on a small group")
    group_args(p)
    p.add_argument("--time-limit", type=float, default=10.0, help="seconds (default 10)")
    p.add_argument("--force", action="store_true", help=f"allow orders above {BRUTE_CAP}")
    p.add_argument("--out", "-o")
    p.add_argument("--rle", action="store_true")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("relations", help="check the defining relations")
    group_args(p)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("gen-grid", help="build and verify over a parameter grid, write CSV")
    p.add_argument("--max-d", type=int, default=8)
    p.add_argument("--max-e", type=int, default=8)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-order", type=int, default=10**5)
    p.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    p.add_argument("--out", "-o", help="CSV file (default: standard output)")
    p.add_argument("--plot", help="also save a timing figure (PNG)")
    p.add_argument("--kv", action="store_true")
    p.set_defaults(func=cmd_gen_grid)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        args.jobs = os.cpu_count() or 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
