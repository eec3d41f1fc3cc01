"""Command line: realized-constant scans and the verification suite.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .bounds import ConfigError, ScanOptions, emit_report, scan_theorem, summarize
from .verify import FAULTS, LEVELS, verify_suite

log = logging.getLogger("eisenbound")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eisenbound", description=__doc__.splitlines()[0])
    p.add_argument("--mode", choices=["scan", "verify"], default="scan")
    p.add_argument("--q-min", type=int, default=3)
    p.add_argument("--q-max", type=int, default=300)
    p.add_argument("--big-k", type=float, default=4.0, help="complex path uses T = q^K")
    p.add_argument("--cap", type=float, default=1e6, help="largest T on the complex path")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="absolute tolerance (accepted for interface stability; "
                        "scans use per-routine defaults)")
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="seed for sampled group elements")
    p.add_argument("--level", default="quick", help=f"verify level, one of {LEVELS}")
    p.add_argument("--inject", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _run_scan(args) -> int:
    opts = ScanOptions(big_k=args.big_k, cap=args.cap, threads=max(1, args.threads))
    rows = scan_theorem(args.q_min, args.q_max, opts)
    text = emit_report(rows, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    s = summarize(rows)
    log.info("%d rows, min realized constant %.6g, %d partial, %d failed",
             s.n_rows, s.min_realized_constant, s.n_partial, s.n_failed)
    return 0 if s.n_failed == 0 else 1


def _run_verify(args) -> int:
    report = verify_suite(args.level, inject=args.inject, seed=args.seed)
    text = json.dumps(report.to_dict(), indent=1, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for r in report.results:
        log.info("%s %s worst=%.3g (%s)", "PASS" if r.passed else "FAIL", r.name, r.worst,
                 r.detail)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.mode == "scan":
            return _run_scan(args)
        if args.level not in LEVELS:
            raise ConfigError(f"--level must be one of {LEVELS}")
        return _run_verify(args)
    except (ConfigError, ValueError) as exc:
        print(f"eisenbound: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"eisenbound: I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
