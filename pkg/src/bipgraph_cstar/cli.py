"""Command-line interface: ``bgc <subcommand> ...``.

JSON goes to stdout, log lines to stderr. Exit status is 0 when every
requested check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from itertools import product

from . import corpus
from .errors import BGError, ParseError, SizeBoundExceeded
from .genpos import family_report, synthesize
from .graph import (
    BipartiteGraph,
    contains_k23,
    edge_key,
    enumerate_k22,
    from_hypergraph,
    graph_to_json,
    is_connected,
    load_graph,
    load_hypergraph,
    loose_edges,
    reduce_all_loose,
    to_dot,
)
from .iso import brute_force_iso, decide_iso
from .reps import (
    NOT_FAITHFUL_NOTE,
    check_gc,
    check_gp,
    commutant_dim,
    default_t_samples,
    edge_generators,
    evaluate_word,
    max_dev,
    sandwich_check,
    standard_rep,
    verify_phi,
    word_should_vanish,
)
from .skeleton import certificate_hex, spec_skeleton

log = logging.getLogger("bgc")

K23_ADVISORY = "contains K_{2,3}: C*(G) is not nuclear, not exact"
CENSUS_MAX_EDGES = 8
FULL_COMMUTANT_MAX_DIM = 48


@dataclass
class AnalysisReport:
    graph: dict
    quadruples: list
    loose_edges: list
    skeleton: dict
    certificate: str
    k23_flag: bool
    advisory: str | None
    scalar_summands: int

    def to_json(self) -> dict:
        return asdict(self)


def analyze(g: BipartiteGraph) -> AnalysisReport:
    quads = [{"edges": [edge_key(e) for e in q.members],
              "pairing": [[edge_key(a), edge_key(b)] for a, b in q.pairing]}
             for q in enumerate_k22(g)]
    flag = contains_k23(g)
    _, summands = reduce_all_loose(g)
    return AnalysisReport(
        graph={"u_count": len(g.u_labels), "v_count": len(g.v_labels), "edge_count": len(g.edges),
               "connected": is_connected(g), **graph_to_json(g)},
        quadruples=quads,
        loose_edges=[edge_key(e) for e in loose_edges(g)],
        skeleton=spec_skeleton(g).to_json(),
        certificate=certificate_hex(g),
        k23_flag=flag,
        advisory=K23_ADVISORY if flag else None,
        scalar_summands=summands,
    )


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
        return 0
    _emit(analyze(g).to_json())
    return 0


def cmd_export(args) -> int:
    g = load_graph(args.graph)
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
    else:
        _emit(graph_to_json(g))
    return 0


def cmd_iso(args) -> int:
    g, g2 = load_graph(args.graph), load_graph(args.graph2)
    verdict = decide_iso(g, g2)
    out = verdict.to_json()
    ok = True
    if args.oracle:
        oracle = brute_force_iso(g, g2, bound=args.bound)
        agree = oracle.isomorphic == verdict.isomorphic
        out["oracle"] = {"isomorphic": oracle.isomorphic, "agree": agree}
        ok &= agree
        if not agree:
            log.error("decision and brute-force oracle disagree")
    if args.verify_phi and verdict.isomorphic:
        ts = _t_samples(args)
        rep = verify_phi(g, g2, verdict.witness, ts)
        out["verify_phi"] = {"t_samples": list(ts), "checks": rep.to_json(),
                             "pass": rep.passed, "notes": rep.notes}
        ok &= rep.passed
    _emit(out)
    return 0 if ok else 1


def _t_samples(args):
    if args.t:
        return tuple(args.t)
    return default_t_samples(args.seed)


def repcheck(g: BipartiteGraph, ts, word_length: int = 4) -> dict:
    rep = standard_rep(g, ts)
    gp = check_gp(rep)
    gc = check_gc(edge_generators(rep))
    # sandwich lemma over every admissible triple
    checked, skipped, worst, sand_ok = 0, 0, 0.0, True
    for side, other in ((g.u_labels, g.v_labels), (g.v_labels, g.u_labels)):
        for x1, x2 in product(side, side):
            if x1 == x2:
                continue
            for y in other:
                r = sandwich_check(rep, x1, y, x2)
                if r.applicable:
                    checked += 1
                    worst = max(worst, r.norm)
                    sand_ok &= r.passed
                else:
                    skipped += 1
    # every non-path word up to the given length must evaluate to zero
    words, word_worst = 0, 0.0
    verts = g.vertices
    for n in range(2, word_length + 1):
        for w in product(verts, repeat=n):
            if word_should_vanish(g, w):
                words += 1
                word_worst = max(word_worst, max_dev(evaluate_word(rep, w)))
    blocks = [s for s in rep.summands]
    block_dims = []
    for s in blocks:
        sl = slice(s.offset, s.offset + s.dim)
        block_dims.append(commutant_dim([rep[x][sl, sl] for x in g.vertices]))
    commutant = {"summand_dims": block_dims, "irreducible": all(d == 1 for d in block_dims)}
    if rep.dim <= FULL_COMMUTANT_MAX_DIM:
        full = commutant_dim(rep)
        commutant["full_dim"] = full
        commutant["summands"] = len(blocks)
        commutant["pairwise_inequivalent"] = full == len(blocks)
    comm_ok = commutant["irreducible"] and commutant.get("pairwise_inequivalent", True)
    out = {
        "t_samples": list(ts),
        "dim": rep.dim,
        "gp": gp.to_json(),
        "gc": gc.to_json(),
        "sandwich": {"checked": checked, "skipped": skipped, "max_norm": worst, "pass": sand_ok},
        "words": {"max_length": word_length, "non_path_words": words,
                  "max_norm": word_worst, "pass": word_worst <= 1e-9},
        "commutant": {**commutant, "pass": comm_ok},
        "notes": [NOT_FAITHFUL_NOTE] if contains_k23(g) else [],
    }
    out["pass"] = gp.passed and gc.passed and sand_ok and out["words"]["pass"] and comm_ok
    return out


def cmd_repcheck(args) -> int:
    g = load_graph(args.graph)
    ts = _t_samples(args)
    out = {"seed": args.seed, **repcheck(g, ts, args.word_length)}
    _emit(out)
    return 0 if out["pass"] else 1


def cmd_genpos(args) -> int:
    g = load_graph(args.graph)
    cf = synthesize(g, k=args.k, seed=args.seed, max_iter=args.max_iter, tol=args.tol,
                    accept_tol=args.accept_tol, real=args.real)
    rep = family_report(cf)
    ok = rep["generic_position"]["pass"] and all(c["pass"] for c in rep["check_gp"]) \
        and rep["round_trip_trace_deviation"] <= args.accept_tol
    _emit({"seed": args.seed, "k": args.k, "max_iter": args.max_iter, "tol": args.tol,
           "pass": ok, **rep})
    return 0 if ok else 1


def cmd_convert(args) -> int:
    _emit(graph_to_json(from_hypergraph(load_hypergraph(args.hypergraph))))
    return 0


def census(max_edges: int, disconnected: bool = False) -> dict:
    if max_edges > CENSUS_MAX_EDGES:
        raise SizeBoundExceeded(f"census limited to {CENSUS_MAX_EDGES} edges")
    if disconnected:
        graphs = corpus.exhaustive_graphs(max_edges, max_side=max_edges)
    else:
        graphs = corpus.connected_graphs_by_edges(max_edges)
    classes: dict[tuple, list[BipartiteGraph]] = {}
    for g in graphs:
        classes.setdefault((len(g.edges), certificate_hex(g)), []).append(g)
    rows = []
    for (m, cert), members in sorted(classes.items()):
        members = sorted(members, key=corpus.graph_key)
        rows.append({"edge_count": m, "certificate": cert, "size": len(members),
                     "quadruples": len(enumerate_k22(members[0])),
                     "loose": len(loose_edges(members[0])),
                     "representatives": [graph_to_json(x) for x in members]})
    return {"max_edges": max_edges, "connected_only": not disconnected,
            "graphs": len(graphs), "classes": rows}


def cmd_census(args) -> int:
    _emit(census(args.max_edges, args.disconnected))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bgc", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="quadruples, loose edges, skeleton, certificate")
    a.add_argument("graph")
    a.add_argument("--format", choices=["json", "dot"], default="json")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("export", help="re-emit a graph as normalized JSON or DOT")
    e.add_argument("graph")
    e.add_argument("--format", choices=["json", "dot"], default="dot")
    e.set_defaults(func=cmd_export)

    i = sub.add_parser("iso", help="decide isomorphism of the two C*-algebras")
    i.add_argument("graph")
    i.add_argument("graph2")
    i.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    i.add_argument("--bound", type=int, default=8, help="edge bound for the oracle")
    i.add_argument("--verify-phi", action="store_true")
    i.add_argument("--t", type=float, nargs="+")
    i.add_argument("--seed", type=int, default=0)
    i.set_defaults(func=cmd_iso)

    r = sub.add_parser("repcheck", help="relation checks on the standard representation")
    r.add_argument("graph")
    r.add_argument("--t", type=float, nargs="+")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--word-length", type=int, default=4)
    r.set_defaults(func=cmd_repcheck)

    gp = sub.add_parser("genpos", help="synthesize and verify a generic-position family")
    gp.add_argument("graph")
    gp.add_argument("--k", type=int, default=1)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--max-iter", type=int, default=5000)
    gp.add_argument("--tol", type=float, default=1e-10)
    gp.add_argument("--accept-tol", type=float, default=1e-8)
    gp.add_argument("--real", action="store_true", help="real instead of complex start")
    gp.set_defaults(func=cmd_genpos)

    c = sub.add_parser("convert", help="hypergraph JSON to bipartite graph JSON")
    c.add_argument("hypergraph")
    c.set_defaults(func=cmd_convert)

    cs = sub.add_parser("census", help="classify small connected graphs by certificate")
    cs.add_argument("--max-edges", type=int, default=5)
    cs.add_argument("--disconnected", action="store_true",
                    help="include graphs with several components")
    cs.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        log.error("parse error: %s", exc)
        _emit({"error": "ParseError", "message": str(exc), "line": exc.line, "column": exc.column})
        return 2
    except (BGError, OSError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
