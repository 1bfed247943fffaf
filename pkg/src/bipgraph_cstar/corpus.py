"""Small bipartite graph families: exhaustive enumeration up to isomorphism and random draws.

Graphs are grown one edge at a time (new edge between existing vertices, a
pendant edge to a new vertex, or optionally a fresh disjoint edge) and
deduplicated by a complete isomorphism key that allows the side swap.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

from .graph import BipartiteGraph, new_graph

EdgeIdx = frozenset  # of (i, j) with i in range(a), j in range(b)


def _canon_oriented(a: int, b: int, edges) -> tuple:
    if a <= b:
        cols = [[i for i, j in edges if j == c] for c in range(b)]
        best = min(tuple(sorted(sum(1 << p[i] for i in col) for col in cols))
                   for p in permutations(range(a)))
        return (a, b, "R", best)
    rows = [[j for i, j in edges if i == r] for r in range(a)]
    best = min(tuple(sorted(sum(1 << p[j] for j in row) for row in rows))
               for p in permutations(range(b)))
    return (a, b, "C", best)


def iso_key(a: int, b: int, edges) -> tuple:
    """Complete invariant of the bipartite graph up to relabeling and side swap."""
    return min(_canon_oriented(a, b, edges), _canon_oriented(b, a, [(j, i) for i, j in edges]))


def graph_key(g: BipartiteGraph) -> tuple:
    return iso_key(len(g.u_labels), len(g.v_labels),
                   [(g.u_index[u], g.v_index[v]) for u, v in g.edges])


def to_graph(a: int, b: int, edges) -> BipartiteGraph:
    return new_graph([f"u{i + 1}" for i in range(a)], [f"v{j + 1}" for j in range(b)],
                     [(f"u{i + 1}", f"v{j + 1}") for i, j in edges])


def _children(a, b, edges, disjoint: bool):
    es = set(edges)
    for i in range(a):
        for j in range(b):
            if (i, j) not in es:
                yield a, b, es | {(i, j)}
    for i in range(a):
        yield a, b + 1, es | {(i, b)}
    for j in range(b):
        yield a + 1, b, es | {(a, j)}
    if disjoint:
        yield a + 1, b + 1, es | {(a, b)}


def grow(max_edges: int, max_vertices: int | None = None, max_side: int | None = None,
         connected: bool = True) -> list[tuple[int, int, frozenset]]:
    """All graphs with 1..max_edges edges and no isolated vertices, one per class."""
    def fits(a, b):
        if max_vertices is not None and a + b > max_vertices:
            return False
        if max_side is not None and max(a, b) > max_side:
            return False
        return True

    level = {iso_key(1, 1, [(0, 0)]): (1, 1, frozenset({(0, 0)}))}
    out = list(level.values())
    for _ in range(1, max_edges):
        nxt = {}
        for a, b, es in level.values():
            for a2, b2, es2 in _children(a, b, es, not connected):
                if not fits(a2, b2):
                    continue
                key = iso_key(a2, b2, es2)
                if key not in nxt:
                    nxt[key] = (a2, b2, frozenset(es2))
        if not nxt:
            break
        level = nxt
        out.extend(level.values())
    return out


@lru_cache(maxsize=None)
def exhaustive_graphs(max_edges: int = 6, max_side: int = 4) -> tuple[BipartiteGraph, ...]:
    """Every graph (connected or not) without isolated vertices, up to isomorphism."""
    return tuple(to_graph(*t) for t in grow(max_edges, max_side=max_side, connected=False))


@lru_cache(maxsize=None)
def connected_graphs_by_vertices(max_vertices: int = 8) -> tuple[BipartiteGraph, ...]:
    max_edges = (max_vertices // 2) * (max_vertices - max_vertices // 2)
    return tuple(to_graph(*t) for t in grow(max_edges, max_vertices=max_vertices))


@lru_cache(maxsize=None)
def connected_graphs_by_edges(max_edges: int) -> tuple[BipartiteGraph, ...]:
    return tuple(to_graph(*t) for t in grow(max_edges))


def random_graph(rng: random.Random, max_edges: int = 8, max_side: int = 4,
                 min_edges: int = 1) -> BipartiteGraph:
    a = rng.randint(1, max_side)
    b = rng.randint(1, max_side)
    cells = [(i, j) for i in range(a) for j in range(b)]
    m = rng.randint(min(min_edges, len(cells)), min(max_edges, len(cells)))
    return to_graph(a, b, rng.sample(cells, m))


def shuffled_copy(g: BipartiteGraph, rng: random.Random, swap: bool | None = None,
                  prefix: str = "") -> BipartiteGraph:
    """Isomorphic copy with fresh labels, shuffled label order and optionally swapped sides."""
    u, v = list(g.u_labels), list(g.v_labels)
    ren = {x: f"{prefix}{x}#{rng.randrange(10**6)}" for x in u + v}
    if len(set(ren.values())) != len(ren):
        ren = {x: f"{prefix}{x}#{k}" for k, x in enumerate(u + v)}
    rng.shuffle(u)
    rng.shuffle(v)
    edges = [(ren[a], ren[b]) for a, b in g.edges]
    rng.shuffle(edges)
    if swap is None:
        swap = rng.random() < 0.5
    if swap:
        return new_graph([ren[x] for x in v], [ren[x] for x in u], edges)
    return new_graph([ren[x] for x in u], [ren[x] for x in v], edges)
