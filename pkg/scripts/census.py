#!/usr/bin/env python3
"""Tabulate small connected bipartite graphs by C*-algebra class.

Prints one line per edge count: graphs, classes, and how many classes
contain more than one non-isomorphic graph. ``--json`` dumps the full table.
"""

import argparse
import json
import sys
from collections import Counter

from bipgraph_cstar.cli import census


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-edges", type=int, default=7)
    p.add_argument("--disconnected", action="store_true")
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)

    table = census(args.max_edges, args.disconnected)
    if args.json:
        json.dump(table, sys.stdout, indent=2)
        return 0
    graphs = Counter()
    classes = Counter()
    merged = Counter()
    for row in table["classes"]:
        m = row["edge_count"]
        graphs[m] += row["size"]
        classes[m] += 1
        merged[m] += row["size"] > 1
    print(f"{'edges':>5} {'graphs':>7} {'classes':>8} {'merged':>7}")
    for m in sorted(graphs):
        print(f"{m:>5} {graphs[m]:>7} {classes[m]:>8} {merged[m]:>7}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
