#!/usr/bin/env python3
"""Which tori C_r x C_t are EOD-graphs, next to the 4 | r, 4 | t prediction."""

import argparse

from eodprod.eod_search import find_eod_set
from eodprod.graph_core import cartesian_product, cycle_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=12)
    args = ap.parse_args()
    print(f"{'r':>3} {'t':>3} {'eod':>5} {'pred':>5} nodes")
    for r in range(3, args.max + 1):
        for t in range(r, args.max + 1):
            cert = find_eod_set(cartesian_product(cycle_graph(r), cycle_graph(t))[0])
            pred = r % 4 == 0 and t % 4 == 0
            flag = "" if cert.found == pred else "  <-- differs"
            print(f"{r:>3} {t:>3} {cert.found!s:>5} {pred!s:>5} {cert.nodes_explored}{flag}")


if __name__ == "__main__":
    main()
