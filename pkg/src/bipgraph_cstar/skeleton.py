"""Combinatorial model of the one- and two-dimensional part of the spectrum.

Loose edges are isolated clopen points; every K_{2,2} subgraph contributes a
copy of the four-point-compactified interval whose two non-Hausdorff boundary
pairs are the opposite-edge pairs of the 4-cycle. Everything here works on
edge indices in the graph's canonical edge order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import BipartiteGraph, Edge, edge_key, enumerate_k22, loose_edges

IndexQuad = tuple[tuple[int, int, int, int], tuple[tuple[int, int], tuple[int, int]]]


@dataclass(frozen=True)
class DerivedStructure:
    edge_list: tuple[Edge, ...]
    quadruples: tuple[IndexQuad, ...]
    loose: frozenset[int]

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    @property
    def covered(self) -> list[int]:
        return sorted({i for members, _ in self.quadruples for i in members})

    def quad_degree(self) -> list[int]:
        deg = [0] * self.edge_count
        for members, _ in self.quadruples:
            for i in members:
                deg[i] += 1
        return deg

    def incidence(self) -> list[list[tuple[int, tuple[int, int]]]]:
        """Per edge: list of (opposite partner, the two adjacent members)."""
        inc: list[list] = [[] for _ in range(self.edge_count)]
        for members, pairing in self.quadruples:
            for a, b in pairing:
                for x, y in ((a, b), (b, a)):
                    others = tuple(m for m in members if m not in (x, y))
                    inc[x].append((y, others))
        return inc


def derived_structure(g: BipartiteGraph) -> DerivedStructure:
    idx = g.edge_index
    quads = []
    for q in enumerate_k22(g):
        members = tuple(sorted(idx[e] for e in q.members))
        pairing = tuple(sorted(tuple(sorted((idx[a], idx[b]))) for a, b in q.pairing))
        quads.append((members, pairing))
    loose = frozenset(idx[e] for e in loose_edges(g))
    return DerivedStructure(tuple(g.edges), tuple(quads), loose)


@dataclass(frozen=True)
class SkeletonComponent:
    edges: tuple[Edge, Edge, Edge, Edge]
    pairing: tuple[tuple[Edge, Edge], tuple[Edge, Edge]]

    @property
    def boundary(self) -> dict[str, Edge]:
        """Boundary points a, b (first pair) and c, d (second pair)."""
        (a, b), (c, d) = self.pairing
        return {"a": a, "b": b, "c": c, "d": d}

    def non_hausdorff_pairs(self):
        return [frozenset(p) for p in self.pairing]


@dataclass(frozen=True)
class SpecSkeleton:
    clopen_points: tuple[Edge, ...]
    components: tuple[SkeletonComponent, ...]

    def to_json(self) -> dict:
        return {
            "clopen": [edge_key(e) for e in self.clopen_points],
            "components": [
                {"edges": [edge_key(e) for e in c.edges],
                 "pairing": [[edge_key(a), edge_key(b)] for a, b in c.pairing]}
                for c in self.components
            ],
        }


def spec_skeleton(g: BipartiteGraph) -> SpecSkeleton:
    ds = derived_structure(g)
    edges = ds.edge_list
    comps = []
    for members, pairing in ds.quadruples:
        comps.append(SkeletonComponent(
            tuple(edges[i] for i in members),
            tuple((edges[a], edges[b]) for a, b in pairing)))
    return SpecSkeleton(tuple(edges[i] for i in sorted(ds.loose)), tuple(comps))


@dataclass(frozen=True)
class InvariantVector:
    edge_count: int
    loose_count: int
    quadruple_count: int
    degree_multiset: tuple[int, ...]
    partner_profile: tuple[tuple[int, ...], ...]


def invariant_vector(ds: DerivedStructure) -> InvariantVector:
    deg = ds.quad_degree()
    inc = ds.incidence()
    profile = sorted(tuple(sorted(deg[p] for p, _ in inc[e])) for e in range(ds.edge_count))
    return InvariantVector(ds.edge_count, len(ds.loose), len(ds.quadruples),
                           tuple(sorted(deg)), tuple(profile))


# -- canonical form -------------------------------------------------------

def refine_colors(ds: DerivedStructure, colors: list[int]) -> list[int]:
    """Equitable refinement of an ordered edge colouring.

    An edge's signature is its colour plus the multiset, over its quadruples,
    of (partner colour, sorted colours of the two adjacent members). New
    colours are ranks of signatures, so the result refines the input order.
    """
    inc = ds.incidence()
    while True:
        sigs = []
        for e in range(ds.edge_count):
            s = sorted((colors[p], tuple(sorted((colors[a], colors[b]))))
                       for p, (a, b) in inc[e])
            sigs.append((colors[e], tuple(s)))
        rank = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def initial_colors(ds: DerivedStructure) -> list[int]:
    deg = ds.quad_degree()
    rank = {d: k for k, d in enumerate(sorted(set(deg)))}
    return [rank[d] for d in deg]


def _individualize(colors: list[int], e: int) -> list[int]:
    keyed = [(c, 0 if i == e else 1) if c == colors[e] else (c, 0) for i, c in enumerate(colors)]
    rank = {k: r for r, k in enumerate(sorted(set(keyed)))}
    return [rank[k] for k in keyed]


def _target_cell(colors: list[int], among: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for e in among:
        cells.setdefault(colors[e], []).append(e)
    big = [(len(v), c) for c, v in cells.items() if len(v) > 1]
    if not big:
        return None
    _, c = min(big)
    return cells[c]


def _encode(ds: DerivedStructure, colors: list[int]) -> tuple:
    quads = []
    for _, pairing in ds.quadruples:
        quads.append(tuple(sorted(tuple(sorted((colors[a], colors[b]))) for a, b in pairing)))
    return tuple(sorted(quads))


def canonical_form(ds: DerivedStructure) -> tuple:
    """Lexicographically least quadruple encoding over the refinement tree.

    Only quadruple-covered edges take part; loose edges enter via counts.
    """
    covered = ds.covered
    best = None
    if covered:
        start = refine_colors(ds, initial_colors(ds))
        stack = [start]
        while stack:
            colors = stack.pop()
            cell = _target_cell(colors, covered)
            if cell is None:
                # covered colours are distinct; rank them to 0..m-1
                order = sorted(covered, key=colors.__getitem__)
                pos = {e: i for i, e in enumerate(order)}
                full = [pos.get(e, -1) for e in range(ds.edge_count)]
                code = _encode(ds, full)
                if best is None or code < best:
                    best = code
                continue
            for e in cell:
                stack.append(refine_colors(ds, _individualize(colors, e)))
    return (ds.edge_count, len(ds.loose), len(covered), best or ())


def canonical_certificate(ds: DerivedStructure) -> bytes:
    n, loose, m, quads = canonical_form(ds)
    out = bytearray()
    for x in (n, loose, m, len(quads)):
        out += x.to_bytes(2, "big")
    for pairs in quads:
        for a, b in pairs:
            out += a.to_bytes(2, "big") + b.to_bytes(2, "big")
    return bytes(out)


def certificate_hex(g: BipartiteGraph) -> str:
    return canonical_certificate(derived_structure(g)).hex()
