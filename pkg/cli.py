#!/usr/bin/env python3
"""Command-line front end for multiplication, prime search, scans and benchmarks.

Usage:
    python cli.py mul ff ff
    python cli.py find-prime --m 1000
    python cli.py find-prime --m 1000 --list --a-max 9100
    python cli.py ap-scan --q-max 5000 --csv data/scan.csv
    python cli.py selftest --level quick
    python cli.py bench --bits 65536 131072 --engines karatsuba fft
    python cli.py chain --m 44957696
    python cli.py results --run <id>

Exit status: 0 success, 1 usage or input error, 2 infeasible parameters or
nothing found, 3 invariant or self-test failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional, Sequence

from bench import DEFAULT_ENGINES, run_bench
from bigint import format_hex, mul_oracle, parse_hex
from config import settings, setup_logging
from errors import HexFormatError, InvariantFailure, NotFound, ParameterInfeasible, ProfileError
from intmul import ENGINES, multiply
from primes import ap_scan, default_a_max, find_all_a, find_p0, find_p0_unbounded, lg
from reports import bench_csv, scan_csv, write_report
from selftest import LEVELS, SUITES, run_selftest
from transform import Profile, log_star, size_chain
from utils.profile_io import load_profile

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_INVARIANT = 3


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _store():
    if not settings.store_results:
        return None
    # deferred so that commands without persistence never touch the database
    from result_store import ResultStore  # pylint: disable=import-outside-toplevel

    return ResultStore()


# --- commands ----------------------------------------------------------------
def cmd_mul(args: argparse.Namespace, profile: Profile) -> int:
    u, v = parse_hex(args.u), parse_hex(args.v)
    product = multiply(u, v, args.engine, profile)
    if args.check and product != mul_oracle(u, v):
        raise InvariantFailure(f"{args.engine} product differs from the schoolbook oracle")
    print(format_hex(product))
    return EXIT_OK


def cmd_find_prime(args: argparse.Namespace, profile: Profile) -> int:
    start = time.perf_counter()
    if args.unbounded and (args.list or args.a_max is not None):
        raise ValueError("--unbounded cannot be combined with --list or --a-max")
    if args.list:
        a_max = default_a_max(args.m) if args.a_max is None else args.a_max
        values = find_all_a(args.m, a_max)
        if not values:
            raise NotFound(f"no prime a*2^{args.m}+1 with a <= {a_max}")
        for a in values:
            print(a)
    else:
        store = None if args.unbounded else _store()
        if args.unbounded:
            prime = find_p0_unbounded(args.m, args.timeout)
        elif store:
            prime = store.cached_find_p0(args.m, args.a_max)
        else:
            prime = find_p0(args.m, args.a_max)
        print(prime.a)
        if args.hex:
            print(format(prime.p, "x"))
    LOGGER.info("[SEARCH] m=%d done in %.2fs", args.m, time.perf_counter() - start)
    return EXIT_OK


def _scan_moduli(q_max: int, prime_powers: bool) -> List[int]:
    if prime_powers:
        return [1 << j for j in range(1, lg(q_max + 1) + 1) if 1 << j <= q_max]
    return list(range(2, q_max + 1))


def cmd_ap_scan(args: argparse.Namespace, profile: Profile) -> int:
    if args.q_max < 2:
        raise ParameterInfeasible("q_max >= 2", f"q_max={args.q_max}")
    summary = ap_scan(_scan_moduli(args.q_max, args.prime_powers))
    text = scan_csv(summary.records)
    if args.csv:
        write_report(args.csv, text)
        print(summary.summary_line())
    else:
        sys.stdout.write(text)
        print(summary.summary_line(), file=sys.stderr)
    store = _store()
    if store:
        run_id = store.record_scan(summary, {"q_max": args.q_max, "prime_powers": args.prime_powers})
        print(f"run {run_id}", file=sys.stderr)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace, profile: Profile) -> int:
    report = run_selftest(args.level, settings.seed, args.inject_fault)
    sys.stdout.write(report.render())
    if not report.passed:
        LOGGER.error("[SELFTEST] failed suites: %s", ", ".join(report.failed))
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, profile: Profile) -> int:
    if any(bits < 1 for bits in args.bits):
        raise ParameterInfeasible("bits >= 1", f"bits={args.bits}")
    result = run_bench(args.bits, args.engines, settings.seed, profile)
    text = bench_csv(result.rows)
    if args.csv:
        write_report(args.csv, text)
    else:
        sys.stdout.write(text)
    for point in result.trend:
        LOGGER.info("[BENCH] %s trend at %d bits: %.2f (%s)", point.engine, point.bits, point.ratio,
                    "ok" if point.ok else "above limit")
    store = _store()
    if store:
        run_id = store.record_bench(result.rows, {"bits": args.bits, "engines": list(args.engines)})
        print(f"run {run_id}", file=sys.stderr)
    return EXIT_OK


def cmd_results(args: argparse.Namespace, profile: Profile) -> int:
    store = _store()
    if store is None:
        raise ValueError("the results database is disabled (--no-store or STORE_RESULTS=false)")
    payload = store.load_run(args.run) if args.run else store.cached_primes()
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_chain(args: argparse.Namespace, profile: Profile) -> int:
    chain = size_chain(args.m, args.steps)
    print(" -> ".join(str(m) for m in chain))
    print(f"log* {args.m} = {log_star(args.m)}")
    return EXIT_OK


# --- parser ------------------------------------------------------------------
def build_parser() -> CliParser:
    parser = CliParser(description="Integer multiplication over FFT primes.")
    parser.add_argument("--profile", default=None, help="transform profile file (key=value lines)")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--no-store", action="store_true", help="do not write to the results database")
    sub = parser.add_subparsers(dest="command", required=True)

    mul = sub.add_parser("mul", help="multiply two hex integers")
    mul.add_argument("u")
    mul.add_argument("v")
    mul.add_argument("--engine", choices=ENGINES, default="fft")
    mul.add_argument("--check", action="store_true", help="compare with the schoolbook product")
    mul.set_defaults(handler=cmd_mul)

    find = sub.add_parser("find-prime", help="least a with a*2^m+1 prime")
    find.add_argument("--m", type=int, required=True)
    find.add_argument("--list", action="store_true", help="every a up to --a-max")
    find.add_argument("--a-max", type=int, default=None)
    find.add_argument("--hex", action="store_true", help="also print p in hex")
    find.add_argument("--unbounded", action="store_true", help="search every a until --timeout runs out")
    find.add_argument("--timeout", type=float, default=None, help="seconds for --unbounded (default SEARCH_TIMEOUT)")
    find.set_defaults(handler=cmd_find_prime)

    scan = sub.add_parser("ap-scan", help="least primes in progressions for q <= q-max")
    scan.add_argument("--q-max", type=int, required=True)
    scan.add_argument("--csv", default=None, help="write rows here instead of stdout")
    scan.add_argument("--prime-powers", action="store_true", help="only q = 2^j")
    scan.set_defaults(handler=cmd_ap_scan)

    selftest = sub.add_parser("selftest", help="run the invariant suites")
    selftest.add_argument("--level", choices=LEVELS, default="quick")
    selftest.add_argument("--inject-fault", choices=sorted(SUITES), default=None)
    selftest.set_defaults(handler=cmd_selftest)

    bench = sub.add_parser("bench", help="time every engine per size")
    bench.add_argument("--bits", type=int, nargs="+", required=True)
    bench.add_argument("--engines", nargs="+", choices=ENGINES, default=list(DEFAULT_ENGINES))
    bench.add_argument("--csv", default=None)
    bench.set_defaults(handler=cmd_bench)

    results = sub.add_parser("results", help="show cached primes or a stored run")
    results.add_argument("--run", default=None, help="run id printed by ap-scan or bench")
    results.set_defaults(handler=cmd_results)

    chain = sub.add_parser("chain", help="sizes m, m', m'', ... of the recursion")
    chain.add_argument("--m", type=int, required=True)
    chain.add_argument("--steps", type=int, default=8)
    chain.set_defaults(handler=cmd_chain)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    if args.seed is not None:
        settings.seed = args.seed
    if args.no_store:
        settings.store_results = False

    try:
        profile = load_profile(args.profile or settings.profile_path)
        return args.handler(args, profile)
    except (HexFormatError, ProfileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterInfeasible, NotFound) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvariantFailure as exc:
        LOGGER.error("Invariant failure: %s", exc)
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
