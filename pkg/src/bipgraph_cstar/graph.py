"""Bipartite graphs, K_{2,2} subgraphs and structural reductions.

Vertices are opaque string labels. Edges are stored as ``(u, v)`` tuples with
``u`` on the U side and ``v`` on the V side, sorted by ``(U-index, V-index)``
where the indices follow input order.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    CrossSideEdge,
    DuplicateLabel,
    EdgeNotLoose,
    EmptySource,
    ParseError,
    UnknownEdge,
    UnknownEndpoint,
    UnknownVertex,
)

Edge = tuple[str, str]


@dataclass(frozen=True)
class BipartiteGraph:
    u_labels: tuple[str, ...]
    v_labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def u_index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.u_labels)}

    @cached_property
    def v_index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.v_labels)}

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _nbrs(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {x: set() for x in self.vertices}
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return {x: frozenset(s) for x, s in out.items()}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.u_labels + self.v_labels

    def side(self, x: str) -> str:
        if x in self.u_index:
            return "U"
        if x in self.v_index:
            return "V"
        raise UnknownVertex(x)

    def has_vertex(self, x: str) -> bool:
        return x in self.u_index or x in self.v_index

    def has_edge(self, a: str, b: str) -> bool:
        return (a, b) in self.edge_set or (b, a) in self.edge_set

    def adjacent(self, a: str, b: str) -> bool:
        return b in self._nbrs.get(a, ())

    def degree(self, x: str) -> int:
        return len(neighbors(self, x))

    def orient(self, a: str, b: str) -> Edge:
        """Return the stored ``(u, v)`` form of an edge given in either order."""
        if (a, b) in self.edge_set:
            return (a, b)
        if (b, a) in self.edge_set:
            return (b, a)
        raise UnknownEdge((a, b))

    def __repr__(self):
        return (f"BipartiteGraph(U={list(self.u_labels)}, V={list(self.v_labels)}, "
                f"E={[list(e) for e in self.edges]})")


def new_graph(u_labels: Iterable[str], v_labels: Iterable[str],
              edges: Iterable[Sequence[str]]) -> BipartiteGraph:
    """Validate labels and edges and return a graph with canonical edge order.

    Edges may be given with endpoints in either order; repeated edges collapse.
    """
    u = tuple(str(x) for x in u_labels)
    v = tuple(str(x) for x in v_labels)
    for side in (u, v):
        dup = [x for x, c in Counter(side).items() if c > 1]
        if dup:
            raise DuplicateLabel(f"duplicate vertex label(s) {dup}")
    both = set(u) & set(v)
    if both:
        raise DuplicateLabel(f"label(s) {sorted(both)} on both sides")
    ui = {x: i for i, x in enumerate(u)}
    vi = {x: i for i, x in enumerate(v)}
    keyed = set()
    for e in edges:
        if len(e) != 2:
            raise CrossSideEdge(f"edge {e!r} does not have two endpoints")
        a, b = str(e[0]), str(e[1])
        for x in (a, b):
            if x not in ui and x not in vi:
                raise UnknownEndpoint(f"edge {e!r} has unknown endpoint {x!r}")
        if a in ui and b in vi:
            keyed.add((ui[a], vi[b]))
        elif a in vi and b in ui:
            keyed.add((ui[b], vi[a]))
        else:
            raise CrossSideEdge(f"edge {e!r} joins two vertices of the same side")
    ordered = tuple((u[i], v[j]) for i, j in sorted(keyed))
    return BipartiteGraph(u, v, ordered)


def complete_bipartite(m: int, n: int, u_prefix="u", v_prefix="v") -> BipartiteGraph:
    u = [f"{u_prefix}{i + 1}" for i in range(m)]
    v = [f"{v_prefix}{j + 1}" for j in range(n)]
    return new_graph(u, v, [(a, b) for a in u for b in v])


def neighbors(g: BipartiteGraph, x: str) -> frozenset[str]:
    try:
        return g._nbrs[x]
    except KeyError:
        raise UnknownVertex(x) from None


def _check_vertices(g, xs):
    for x in xs:
        if not g.has_vertex(x):
            raise UnknownVertex(x)


def induced_by_vertices(g: BipartiteGraph, vertices: Iterable[str]) -> BipartiteGraph:
    keep = set(vertices)
    _check_vertices(g, keep)
    u = [x for x in g.u_labels if x in keep]
    v = [x for x in g.v_labels if x in keep]
    return BipartiteGraph(tuple(u), tuple(v),
                          tuple(e for e in g.edges if e[0] in keep and e[1] in keep))


def induced_by_edges(g: BipartiteGraph, edges: Iterable[Sequence[str]]) -> BipartiteGraph:
    chosen = set()
    for e in edges:
        if not g.has_edge(e[0], e[1]):
            raise UnknownEdge(tuple(e))
        chosen.add(g.orient(e[0], e[1]))
    ends = {x for e in chosen for x in e}
    u = tuple(x for x in g.u_labels if x in ends)
    v = tuple(x for x in g.v_labels if x in ends)
    return BipartiteGraph(u, v, tuple(e for e in g.edges if e in chosen))


def delete_edge(g: BipartiteGraph, e: Sequence[str]) -> BipartiteGraph:
    e = g.orient(e[0], e[1])
    return BipartiteGraph(g.u_labels, g.v_labels, tuple(f for f in g.edges if f != e))


def disjoint_union(g: BipartiteGraph, h: BipartiteGraph) -> BipartiteGraph:
    """Union of ``g`` with a copy of ``h`` whose labels get a ``'`` suffix on clash."""
    taken = set(g.vertices)
    ren = {}
    for x in h.vertices:
        y = x
        while y in taken:
            y += "'"
        taken.add(y)
        ren[x] = y
    return new_graph(g.u_labels + tuple(ren[x] for x in h.u_labels),
                     g.v_labels + tuple(ren[x] for x in h.v_labels),
                     list(g.edges) + [(ren[a], ren[b]) for a, b in h.edges])


def relabel(g: BipartiteGraph, mapping: Mapping[str, str],
            u_order=None, v_order=None) -> BipartiteGraph:
    """Rename vertices; optional orders permute the label lists of the result."""
    u = [mapping.get(x, x) for x in g.u_labels]
    v = [mapping.get(x, x) for x in g.v_labels]
    if u_order is not None:
        u = [u[i] for i in u_order]
    if v_order is not None:
        v = [v[i] for i in v_order]
    return new_graph(u, v, [(mapping.get(a, a), mapping.get(b, b)) for a, b in g.edges])


def swap_sides(g: BipartiteGraph) -> BipartiteGraph:
    return new_graph(g.v_labels, g.u_labels, [(b, a) for a, b in g.edges])


def is_connected(g: BipartiteGraph) -> bool:
    verts = g.vertices
    if not verts:
        return False
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in g._nbrs[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def edges_adjacent(e: Edge, f: Edge) -> bool:
    """Distinct edges are adjacent when they share an endpoint."""
    return e != f and (e[0] == f[0] or e[1] == f[1])


# -- paths ---------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    vertices: tuple[str, ...]

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def range(self) -> str:
        return self.vertices[-1]

    def concat(self, other: "Path") -> "Path":
        if self.range != other.source:
            raise ValueError("paths do not compose")
        return Path(self.vertices + other.vertices[1:])


def is_path(g: BipartiteGraph, seq: Sequence[str]) -> bool:
    _check_vertices(g, seq)
    if not seq:
        return False
    return all(g.adjacent(a, b) for a, b in zip(seq, seq[1:]))


def collapse_repeats(seq: Sequence[str]) -> tuple[str, ...]:
    out = []
    for x in seq:
        if not out or out[-1] != x:
            out.append(x)
    return tuple(out)


# -- hypergraphs ---------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    hedges: tuple[str, ...]
    source: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices) or len(set(self.hedges)) != len(self.hedges):
            raise DuplicateLabel("duplicate hypergraph labels")
        if vs & set(self.hedges):
            raise DuplicateLabel("vertex and hyperedge labels overlap")
        for e in self.hedges:
            s = self.source.get(e)
            if not s:
                raise EmptySource(f"hyperedge {e!r} has an empty source set")
            if not set(s) <= vs:
                raise UnknownVertex(f"hyperedge {e!r} has source outside the vertex list")
        for e in self.source:
            if e not in self.hedges:
                raise UnknownEdge(f"source given for unknown hyperedge {e!r}")


def from_hypergraph(h: Hypergraph) -> BipartiteGraph:
    return new_graph(h.vertices, h.hedges,
                     [(v, e) for e in h.hedges for v in h.source[e]])


# -- K_{2,2} subgraphs ---------------------------------------------------

@dataclass(frozen=True)
class Quadruple:
    """A 4-cycle ``u1 v1 u2 v2`` as an edge set with its two opposite-edge pairs."""
    members: tuple[Edge, Edge, Edge, Edge]
    pairing: tuple[tuple[Edge, Edge], tuple[Edge, Edge]]

    @classmethod
    def from_vertices(cls, u1, u2, v1, v2, g: BipartiteGraph | None = None) -> "Quadruple":
        e11, e12, e21, e22 = (u1, v1), (u1, v2), (u2, v1), (u2, v2)
        if g is not None:
            key = lambda e: g.edge_index[e]
        else:
            key = lambda e: e
        members = tuple(sorted((e11, e12, e21, e22), key=key))
        pairing = tuple(sorted((tuple(sorted((e11, e22), key=key)),
                                tuple(sorted((e12, e21), key=key))), key=lambda p: key(p[0])))
        return cls(members, pairing)

    def partner(self, e: Edge) -> Edge:
        for a, b in self.pairing:
            if e == a:
                return b
            if e == b:
                return a
        raise UnknownEdge(e)


def enumerate_k22(g: BipartiteGraph) -> list[Quadruple]:
    """All K_{2,2} subgraphs, ordered by (u1, u2, v1, v2) input indices."""
    out = []
    for a, b in combinations(g.u_labels, 2):
        common = neighbors(g, a) & neighbors(g, b)
        if len(common) < 2:
            continue
        cs = sorted(common, key=g.v_index.__getitem__)
        for c, d in combinations(cs, 2):
            out.append(Quadruple.from_vertices(a, b, c, d, g))
    return out


def loose_edges(g: BipartiteGraph) -> list[Edge]:
    covered = {e for q in enumerate_k22(g) for e in q.members}
    return [e for e in g.edges if e not in covered]


def contains_k23(g: BipartiteGraph) -> bool:
    for side in (g.u_labels, g.v_labels):
        for a, b in combinations(side, 2):
            if len(neighbors(g, a) & neighbors(g, b)) >= 3:
                return True
    return False


def reduce_loose_edge(g: BipartiteGraph, e: Sequence[str]) -> tuple[BipartiteGraph, int]:
    """Delete a loose edge; the removed edge accounts for one scalar summand."""
    e = g.orient(e[0], e[1])
    if e not in loose_edges(g):
        raise EdgeNotLoose(e)
    return delete_edge(g, e), 1


def reduce_all_loose(g: BipartiteGraph) -> tuple[BipartiteGraph, int]:
    count = 0
    while True:
        loose = loose_edges(g)
        if not loose:
            return g, count
        g, inc = reduce_loose_edge(g, loose[0])
        count += inc


# -- graph isomorphism ---------------------------------------------------

def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    # 1-WL on the disjoint union, canonical recoloring by sorted signatures
    while True:
        sigs = [(colors[i], tuple(sorted(colors[j] for j in adj[i]))) for i in range(len(adj))]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _iso_oriented(g: BipartiteGraph, h: BipartiteGraph, h_u, h_v):
    """Search for maps g.U -> h_u, g.V -> h_v preserving edges exactly."""
    if len(g.u_labels) != len(h_u) or len(g.v_labels) != len(h_v) or len(g.edges) != len(h.edges):
        return None
    gv = list(g.u_labels) + list(g.v_labels)
    hv = list(h_u) + list(h_v)
    n = len(gv)
    # the two graphs may share labels, so index them separately
    gpos = {x: i for i, x in enumerate(gv)}
    hpos = {x: n + i for i, x in enumerate(hv)}
    adj = [[] for _ in range(2 * n)]
    for graph, pos in ((g, gpos), (h, hpos)):
        for a, b in graph.edges:
            adj[pos[a]].append(pos[b])
            adj[pos[b]].append(pos[a])
    nu = len(g.u_labels)
    init = [0 if (i % n) < nu else 1 for i in range(2 * n)]
    col = _refine(adj, init)
    if Counter(col[:n]) != Counter(col[n:]):
        return None
    nbr = [set(a) for a in adj]
    size = Counter(col[:n])
    order = sorted(range(n), key=lambda i: (size[col[i]], col[i], i))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n, 2 * n):
            if j in used or col[j] != col[i]:
                continue
            ok = all(((mapping[a] in nbr[j]) == (a in nbr[i])) for a in mapping)
            if not ok:
                continue
            mapping[i] = j
            used.add(j)
            if extend(k + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    if not extend(0):
        return None
    return {gv[i]: hv[j - n] for i, j in mapping.items()}


def is_graph_isomorphic(g: BipartiteGraph, h: BipartiteGraph, return_map: bool = False):
    """Bipartite isomorphism, allowing U and V of ``h`` to be swapped.

    With ``return_map`` the result is ``(flag, vertex_map, swapped)``.
    """
    m = _iso_oriented(g, h, h.u_labels, h.v_labels)
    swapped = False
    if m is None:
        m = _iso_oriented(g, h, h.v_labels, h.u_labels)
        swapped = m is not None
    if return_map:
        return m is not None, m, swapped
    return m is not None


# -- I/O -----------------------------------------------------------------

def graph_to_json(g: BipartiteGraph) -> dict:
    return {"u": list(g.u_labels), "v": list(g.v_labels), "e": [list(e) for e in g.edges]}


def graph_from_json(obj) -> BipartiteGraph:
    if not isinstance(obj, dict) or not {"u", "v", "e"} <= set(obj):
        raise ParseError("graph JSON needs keys 'u', 'v', 'e'")
    return new_graph(obj["u"], obj["v"], obj["e"])


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {"vertices": list(h.vertices), "hedges": list(h.hedges),
            "source": {e: sorted(h.source[e], key=h.vertices.index) for e in h.hedges}}


def hypergraph_from_json(obj) -> Hypergraph:
    if not isinstance(obj, dict) or not {"vertices", "hedges", "source"} <= set(obj):
        raise ParseError("hypergraph JSON needs keys 'vertices', 'hedges', 'source'")
    return Hypergraph(tuple(map(str, obj["vertices"])), tuple(map(str, obj["hedges"])),
                      {str(k): frozenset(map(str, s)) for k, s in obj["source"].items()})


def parse_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def load_graph(path) -> BipartiteGraph:
    with open(path) as fh:
        return graph_from_json(parse_json_text(fh.read()))


def load_hypergraph(path) -> Hypergraph:
    with open(path) as fh:
        return hypergraph_from_json(parse_json_text(fh.read()))


def to_dot(g: BipartiteGraph, name: str = "G") -> str:
    """Undirected DOT: U vertices filled, V vertices hollow."""
    lines = [f"graph {json.dumps(name)} {{", "  rankdir=LR;"]
    for x in g.u_labels:
        lines.append(f'  {json.dumps(x)} [shape=circle, style=filled, fillcolor=black, fontcolor=white];')
    for x in g.v_labels:
        lines.append(f'  {json.dumps(x)} [shape=circle, style=solid];')
    for a, b in g.edges:
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def edge_key(e: Edge) -> str:
    return f"{e[0]},{e[1]}"
