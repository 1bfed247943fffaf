#!/usr/bin/env python3
"""Compare decide_iso with the brute-force oracle on random graph pairs.

Pairs are biased toward equal edge counts so that most comparisons reach
the search rather than the count precheck. Every witness is also pushed
through verify_phi.
"""

import argparse
import random
import time

from bipgraph_cstar import corpus
from bipgraph_cstar.iso import brute_force_iso, decide_iso
from bipgraph_cstar.reps import default_t_samples, verify_phi


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=int, default=2000)
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--max-side", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    r = random.Random(args.seed)
    ts = default_t_samples(args.seed)
    stats = dict(pairs=0, isomorphic=0, disagreements=0, phi_failures=0, nodes=0)
    t0 = time.perf_counter()
    for _ in range(args.pairs):
        a = corpus.random_graph(r, args.max_edges, args.max_side)
        if r.random() < 0.4:
            b = corpus.shuffled_copy(a, r)
        else:
            b = corpus.random_graph(r, len(a.edges), args.max_side, len(a.edges))
        v = decide_iso(a, b)
        stats["pairs"] += 1
        stats["nodes"] += v.stats.get("nodes", 0)
        if v.isomorphic != brute_force_iso(a, b, bound=args.max_edges).isomorphic:
            stats["disagreements"] += 1
            print("disagreement:", a, b)
        if v.isomorphic:
            stats["isomorphic"] += 1
            stats["phi_failures"] += not verify_phi(a, b, v.witness, ts).passed
    print(f"seed={args.seed} t_samples={[round(t, 4) for t in ts]}")
    print(" ".join(f"{k}={v}" for k, v in stats.items()), f"time={time.perf_counter() - t0:.1f}s")
    return 1 if stats["disagreements"] or stats["phi_failures"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
