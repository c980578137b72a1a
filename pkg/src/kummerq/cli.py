"""Command-line interface: ``kummerq compute|scan|stats|candidates``."""

from __future__ import annotations

import argparse
import sys
import time

from .arith import DEFAULT_MAX_ENTRIES
from .ek import ek_difference
from .errors import InternalInconsistencyError, PreconditionError
from .kummer import DEFAULT_ORACLE_CAP, METHODS, kummer_ratio, log10_G
from .scan import JOBS_ENV, KINDS, candidates, default_jobs, run_scan, stats

EXIT_INTERNAL = 1
EXIT_PRECONDITION = 2
ENTRY_BYTES = 8


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"not an unsigned 64-bit integer: {text}")
    return value


def _positive(text: str) -> int:
    value = _u64(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _max_entries(args) -> int:
    if args.memory_budget is None:
        return DEFAULT_MAX_ENTRIES
    return max(1, args.memory_budget // ENTRY_BYTES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kummerq",
        description="Kummer ratio r(q) and Euler-Kronecker differences for prime cyclotomic fields.",
        epilog=f"Exit status: 0 ok, 2 bad input, 1 internal error. {JOBS_ENV} sets the default --jobs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument(
        "--memory-budget",
        type=_positive,
        metavar="BYTES",
        help=f"refuse q whose power table exceeds BYTES (default {DEFAULT_MAX_ENTRIES * ENTRY_BYTES})",
    )

    p = sub.add_parser("compute", parents=[budget], help="compute r(q) for one prime")
    p.add_argument("q", type=_u64)
    p.add_argument("--method", choices=METHODS, default="bernoulli")
    p.add_argument("--ek", action="store_true", help="also compute the Euler-Kronecker difference")
    p.add_argument("--digits", type=int, default=17, help="significant digits printed (min 15)")
    p.add_argument("--oracle-cap", type=_positive, default=DEFAULT_ORACLE_CAP)

    p = sub.add_parser("scan", parents=[budget], help="evaluate every odd prime in a range into a CSV")
    p.add_argument("start", type=_u64)
    p.add_argument("end", type=_u64)
    p.add_argument("--kind", choices=KINDS, default="kummer")
    p.add_argument("--method", choices=("digamma", "bernoulli"), default="bernoulli")
    p.add_argument("--out", required=True, metavar="PATH", help="output CSV, also the resume checkpoint")
    p.add_argument("--jobs", type=_positive, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")

    p = sub.add_parser("stats", help="summarize an existing scan CSV")
    p.add_argument("path")

    p = sub.add_parser("candidates", help="rank primes by how many b*q+1 are prime")
    p.add_argument("start", type=_u64)
    p.add_argument("end", type=_u64)
    p.add_argument("--limit", type=_positive, default=20, metavar="B")
    p.add_argument("--count", type=_positive, default=10)
    return parser


def cmd_compute(args) -> None:
    digits = max(15, args.digits)
    t0 = time.perf_counter()
    res = kummer_ratio(
        args.q, args.method, oracle_cap=args.oracle_cap, max_entries=_max_entries(args)
    )
    lines = [
        f"q = {res.q}",
        f"method = {res.method}",
        f"log_r = {res.log_r:.{digits}g}",
        f"r = {res.r:.{digits}g}",
        f"log10_G = {log10_G(res.q):.{digits}g}",
        f"arg_defect = {res.arg_defect:.3e}",
        f"elapsed_s = {res.elapsed_ns / 1e9:.3f}",
    ]
    if args.ek:
        t1 = time.perf_counter()
        ek = ek_difference(args.q, _max_entries(args))
        lines += [
            f"ek_diff = {ek.diff:.{digits}g}",
            f"ek_normalized = {ek.normalized:.{digits}g}",
            f"ek_residual_imag = {ek.residual_imag:.3e}",
            f"ek_elapsed_s = {time.perf_counter() - t1:.3f}",
        ]
    lines.append(f"total_elapsed_s = {time.perf_counter() - t0:.3f}")
    print("\n".join(lines))


def cmd_scan(args) -> None:
    jobs = args.jobs if args.jobs is not None else default_jobs()
    summary = run_scan(
        args.start,
        args.end,
        args.out,
        kind=args.kind,
        method=args.method,
        jobs=jobs,
        max_entries=_max_entries(args),
    )
    print(summary.format())


def cmd_stats(args) -> None:
    print(stats(args.path).format())


def cmd_candidates(args) -> None:
    for q, score in candidates(args.start, args.end, args.limit, args.count):
        print(f"{q} {score}")


COMMANDS = {
    "compute": cmd_compute,
    "scan": cmd_scan,
    "stats": cmd_stats,
    "candidates": cmd_candidates,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InternalInconsistencyError, ArithmeticError, MemoryError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
