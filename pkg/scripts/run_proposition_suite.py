#!/usr/bin/env python3
"""Run the proposition suite and print one line per verdict.

Usage: python3 scripts/run_proposition_suite.py [--seed S] [--pair-cap N]
       [--exhaustive] [--falsify] [--out suite.json]
"""

import argparse
import json
import sys
import time

from cconvex.propcheck import run_suite


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--pair-cap", type=int, default=10000)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--falsify", action="store_true")
    p.add_argument("--out", default=None)
    args = p.parse_args()

    t0 = time.perf_counter()
    verdicts = run_suite(seed=args.seed, tol=args.tol, pair_cap=args.pair_cap,
                         exhaustive=args.exhaustive, falsify=args.falsify)
    dt = time.perf_counter() - t0
    failed = 0
    for v in sorted(verdicts, key=lambda v: v.check_id):
        status = "PASS" if v.holds else "FAIL"
        failed += not v.holds
        print(f"{status} {v.check_id:38s} max_violation={v.max_violation:+.3e}  {v.notes}")
    print(f"-- {len(verdicts)} checks, {failed} failed, {dt:.2f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([v.to_dict() for v in verdicts], fh, sort_keys=True,
                      separators=(",", ":"))
            fh.write("\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
