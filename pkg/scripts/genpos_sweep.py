#!/usr/bin/env python3
"""Run generic-position synthesis over every small connected pattern with |U| = |V|.

For each graph the outcome over several seeds and block sizes is one of
converged, degenerate (a block lost invertibility) or nonconvergent. A
failure is inconclusive: it does not show that no family exists.
"""

import argparse
from collections import Counter

from bipgraph_cstar import corpus
from bipgraph_cstar.errors import DegenerateBlock, Nonconvergence
from bipgraph_cstar.genpos import build_projection_family, check_generic_position, synthesize
from bipgraph_cstar.graph import edge_key


def outcome(g, k, seed, max_iter):
    try:
        cf = synthesize(g, k, seed, max_iter=max_iter)
    except DegenerateBlock:
        return "degenerate"
    except Nonconvergence:
        return "nonconvergent"
    ok = check_generic_position(build_projection_family(cf)).passed
    return "converged" if ok else "not-generic"


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--k", type=int, nargs="+", default=[1, 2])
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--max-iter", type=int, default=2000)
    args = p.parse_args(argv)

    graphs = [g for g in corpus.connected_graphs_by_vertices(args.max_vertices)
              if len(g.u_labels) == len(g.v_labels)]
    totals = Counter()
    for g in graphs:
        seen = Counter(outcome(g, k, s, args.max_iter) for k in args.k for s in range(args.seeds))
        totals.update(seen)
        edges = " ".join(edge_key(e) for e in g.edges)
        print(f"|U|={len(g.u_labels)} |E|={len(g.edges):2d} {dict(seen)}  [{edges}]")
    print("total", dict(totals), f"graphs={len(graphs)}")


if __name__ == "__main__":
    main()
