"""Cell-granular oracle count against refinement depth for the demo maps, as CSV."""

import argparse
import csv
import sys

from fpfcolor.demos import make_demo
from fpfcolor.errors import LoopDetected
from fpfcolor.verify import build_conflict_graph, oracle_min_colors

CASES = [("translation", {"cells": 2}), ("translation", {"cells": 4}),
         ("doubling", {}), ("antipodal", {})]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-depth", type=int, default=3)
    ap.add_argument("--limit", type=int, default=40, help="largest graph solved exactly")
    ap.add_argument("--max-nodes", type=int, default=3000, help="skip larger graphs")
    args = ap.parse_args(argv)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["map", "params", "depth", "nodes", "edges", "count", "lower_bound", "exact"])
    for name, params in CASES:
        m = make_demo(name, **params)
        for d in range(args.max_depth + 1):
            if len(m.pieces) * 2 ** (d * m.dimension) > args.max_nodes:
                break
            try:
                g = build_conflict_graph(m, d)
            except LoopDetected:
                w.writerow([name, params, d, "", "", "loops", "", ""])
                continue
            r = oracle_min_colors(g, limit=args.limit)
            w.writerow([name, params, d, len(g), len(g.edges), r.count, r.lower_bound, r.exact])


if __name__ == "__main__":
    main()
