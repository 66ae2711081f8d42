#!/usr/bin/env python3
"""K3-amenability versus EOD of G x K3 over all 32768 labelled graphs on 6 vertices."""

import argparse
import sys

from eodprod.harness import run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--r", type=int, nargs="+", default=[3])
    args = ap.parse_args()
    rep = run_suite("KR_EQUIV", workers=args.workers, min_n=6, max_n=6, r=tuple(args.r))
    sys.stdout.write(rep.render())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
