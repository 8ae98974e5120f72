"""Command-line front end: ``congrlab <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter

from .errors import ConfigError
from .harness import COMMANDS, emit_csv, load_config, run_sweep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="congrlab",
        description="Measure congruence counts, product sets and character sums against their bounds.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--p-min", type=int, dest="p_min")
    ap.add_argument("--p-max", type=int, dest="p_max")
    ap.add_argument("--count", type=int, help="number of primes sampled from [p-min, p-max]")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--slack", type=float, dest="slack_exponent", help="exponent of the p^slack allowance")
    ap.add_argument("--gate", type=float, dest="gate_constant", help="constant multiplying gated bounds")
    ap.add_argument("--eps", type=float)
    ap.add_argument("--budget", type=int, help="max enumeration work per cell")
    ap.add_argument("--out", dest="out_path", help="CSV output path")
    ap.add_argument("--config", help="key=value configuration file")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    overrides = {
        k: getattr(args, k)
        for k in ("p_min", "p_max", "count", "seed", "slack_exponent", "gate_constant", "eps", "budget", "out_path")
    }
    try:
        cfg = load_config(args.config, **overrides)
    except (ConfigError, OSError) as exc:
        print(f"congrlab: {exc}", file=sys.stderr)
        return 2
    checks = run_sweep(args.command, cfg)
    try:
        emit_csv(checks, cfg.out_path)
    except OSError as exc:
        print(f"congrlab: cannot write {cfg.out_path}: {exc}", file=sys.stderr)
        return 2
    tally = Counter(c.verdict for c in checks)
    print(
        f"{args.command}: {len(checks)} rows -> {cfg.out_path} "
        f"(pass={tally['pass']}, fail={tally['fail']}, report-only={tally['report-only']})"
    )
    for c in checks:
        if c.verdict == "fail":
            print(f"  FAIL {c.name} p={c.p} lhs={c.lhs:.6g} rhs={c.rhs:.6g}", file=sys.stderr)
    return 1 if tally["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
