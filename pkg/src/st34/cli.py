"""Command-line front end: named verification suites and canonical data dumps.

    st34 verify all --mode exact --out report.txt
    st34 verify m-tables --j 7 --m-solver modular
    st34 verify discriminant --trials 25 --seed 0x434F5845544552
    st34 dump m 1
    st34 dump vectors | wc -l     # 756

Flags mirror the environment variables ST34_MODE, ST34_POINTS, ST34_SEED,
ST34_PRIMES, ST34_OUT, ST34_PARALLEL.  Reports contain no timing data, so
identical configurations produce byte-identical output; the exit code is
0 iff every claim passed.
"""

from __future__ import annotations

import argparse
import os
import sys

from .ctlattice import enumerate_hyperplanes, enumerate_minimal_vectors, hyperplane_line, vector_line
from .exactnum import eis_str
from .groups import GENERATOR_NAMES, generator
from .idcheck import DEFAULT_SEED
from .invariants import mu_symbolic
from .mpoly import DegreeCapError
from .suites import SUITE_NAMES, SuiteConfig, render_reports, run_suites
from .tables import TableError, table_entry

__all__ = ["main"]


def _env(name: str, default=None):
    return os.environ.get(f"ST34_{name}", default)


def _parse_int(text):
    return int(text, 0) if isinstance(text, str) else text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="st34", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("suite", choices=(*SUITE_NAMES, "all"))
    verify.add_argument(
        "--mode",
        choices=("exact", "randomized", "modular"),
        default=_env("MODE", "exact"),
    )
    verify.add_argument("--points", type=_parse_int, default=_env("POINTS"))
    verify.add_argument("--seed", type=_parse_int, default=_env("SEED", DEFAULT_SEED))
    verify.add_argument("--primes", type=_parse_int, default=_env("PRIMES", 3))
    verify.add_argument("--trials", type=_parse_int, default=25)
    verify.add_argument(
        "--j",
        type=int,
        action="append",
        dest="m_indices",
        help="restrict the m-table re-derivation to given indices (repeatable)",
    )
    verify.add_argument(
        "--m-solver",
        choices=("auto", "exact", "modular"),
        default="auto",
        help="linear-solver route for the m-table re-derivation",
    )
    verify.add_argument("--out", default=_env("OUT"))
    verify.add_argument(
        "--parallel",
        action="store_true",
        default=_env("PARALLEL", "") not in ("", "0"),
        help="run independent suites in separate processes",
    )

    dump = sub.add_parser("dump", help="print an entity in canonical text form")
    dump.add_argument("entity", choices=("vectors", "hyperplanes", "generator", "mu", "m", "h", "J"))
    dump.add_argument("arg", nargs="?", help="generator name / index / degree")
    return parser


def _cmd_verify(args) -> int:
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    cfg = SuiteConfig(
        mode=args.mode,
        points=None if args.points is None else int(args.points),
        seed=int(args.seed),
        primes=int(args.primes),
        trials=int(args.trials),
        m_indices=tuple(args.m_indices) if args.m_indices else (1, 2, 3, 4, 5, 7),
        m_mode=args.m_solver,
    )
    reports = run_suites(names, cfg, parallel=args.parallel)
    text = render_reports(reports, cfg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        ok = all(r.ok for rs in reports.values() for r in rs)
        print(f"report written to {args.out}: {'all claims passed' if ok else 'FAILURES present'}")
    else:
        sys.stdout.write(text)
    if any(not r.ok for rs in reports.values() for r in rs):
        return 1
    from .suites import coverage_gaps

    return 2 if coverage_gaps(reports) else 0


def _need_index(args, what: str) -> int:
    if args.arg is None:
        raise SystemExit(f"dump {what} requires an index argument")
    return int(args.arg)


def _cmd_dump(args) -> int:
    if args.entity == "vectors":
        for v in enumerate_minimal_vectors():
            print(vector_line(v))
    elif args.entity == "hyperplanes":
        for h in enumerate_hyperplanes():
            print(hyperplane_line(h))
    elif args.entity == "generator":
        if args.arg not in GENERATOR_NAMES:
            raise SystemExit(f"unknown generator {args.arg!r}; expected one of {GENERATOR_NAMES}")
        for row in generator(args.arg).matrix:
            print(", ".join(eis_str(c) for c in row))
    elif args.entity == "mu":
        k = _need_index(args, "mu")
        try:
            print(mu_symbolic(k).emit())
        except (ValueError, DegreeCapError) as exc:
            raise SystemExit(str(exc))
    elif args.entity == "m":
        j = _need_index(args, "m")
        try:
            print(table_entry(f"m{j}", f"m{j}").emit())
        except TableError as exc:
            raise SystemExit(str(exc))
    elif args.entity == "h":
        j = _need_index(args, "h")
        try:
            print(table_entry(f"h{j}", f"h{j}").emit())
        except TableError as exc:
            raise SystemExit(str(exc))
    elif args.entity == "J":
        d = _need_index(args, "J")
        try:
            if d in (24, 30, 42):
                print(table_entry("J_rel", f"J{d}_rel").emit())
            else:
                print(table_entry("J", f"J{d}").emit())
        except TableError as exc:
            raise SystemExit(str(exc))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_dump(args)


if __name__ == "__main__":
    sys.exit(main())
