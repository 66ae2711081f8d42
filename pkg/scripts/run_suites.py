#!/usr/bin/env python3
"""Run every verification suite at its default size and print the reports."""

import argparse
import sys

from eodprod.harness import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--only", nargs="*", choices=SUITES, help="subset of suites")
    ap.add_argument("--kv", action="store_true", help="key=value output")
    args = ap.parse_args()
    failed = 0
    for sid in args.only or SUITES:
        rep = run_suite(sid, workers=args.workers)
        sys.stdout.write(rep.render_kv() if args.kv else rep.render())
        print()
        failed += not rep.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
