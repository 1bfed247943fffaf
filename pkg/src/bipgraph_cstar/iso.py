"""Deciding isomorphism of bipartite graph C*-algebras through edge bijections.

A bijection ``f: E -> E'`` is a witness when it maps the K_{2,2} edge
quadruples of one graph exactly onto those of the other and, inside each
quadruple, keeps adjacent edges adjacent and opposite edges opposite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Mapping

import numpy as np

from .errors import NotABijection, SizeBoundExceeded
from .graph import BipartiteGraph, Edge, edge_key, edges_adjacent
from .skeleton import DerivedStructure, derived_structure, refine_colors

COUNT_MISMATCH = "count mismatch"
CERTIFICATE_MISMATCH = "certificate mismatch"
EXHAUSTED = "exhausted search"


@dataclass(frozen=True)
class EdgeBijection:
    forward: Mapping[Edge, Edge]
    backward: Mapping[Edge, Edge]

    @classmethod
    def from_forward(cls, forward: Mapping[Edge, Edge]) -> "EdgeBijection":
        backward = {b: a for a, b in forward.items()}
        if len(backward) != len(forward):
            raise NotABijection("forward map is not injective")
        return cls(dict(forward), backward)

    def inverse(self) -> "EdgeBijection":
        return EdgeBijection(self.backward, self.forward)

    def to_json(self) -> dict:
        return {edge_key(a): edge_key(b) for a, b in self.forward.items()}


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    witness: EdgeBijection | None = None
    rejection_reason: str | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"isomorphic": self.isomorphic,
                "witness": self.witness.to_json() if self.witness else None,
                "reason": self.rejection_reason}


# -- witness checking ----------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    ok: bool
    violation: str | None = None

    def __bool__(self):
        return self.ok


def _quad_sets(g: BipartiteGraph) -> dict[frozenset, tuple]:
    ds = derived_structure(g)
    return {frozenset(ds.edge_list[i] for i in members): members for members, _ in ds.quadruples}


def verify_witness(g: BipartiteGraph, g2: BipartiteGraph, f) -> WitnessReport:
    """Check quadruple preservation both ways and adjacency inside quadruples."""
    fwd = f.forward if isinstance(f, EdgeBijection) else dict(f)
    if set(fwd) != set(g.edges):
        raise NotABijection("map is not total on the source edges")
    if set(fwd.values()) != set(g2.edges) or len(set(fwd.values())) != len(fwd):
        raise NotABijection("map is not a bijection onto the target edges")
    bwd = {b: a for a, b in fwd.items()}
    q1, q2 = _quad_sets(g), _quad_sets(g2)
    for q in q1:
        img = frozenset(fwd[e] for e in q)
        if img not in q2:
            return WitnessReport(False, f"quadruple {sorted(q)} maps to non-quadruple {sorted(img)}")
    for q in q2:
        pre = frozenset(bwd[e] for e in q)
        if pre not in q1:
            return WitnessReport(False, f"quadruple {sorted(q)} has non-quadruple preimage {sorted(pre)}")
    for q in q1:
        for a, b in combinations(sorted(q), 2):
            if edges_adjacent(a, b) != edges_adjacent(fwd[a], fwd[b]):
                kind = "adjacent" if edges_adjacent(a, b) else "non-adjacent"
                return WitnessReport(False, f"{kind} pair {a}, {b} maps to {fwd[a]}, {fwd[b]}")
    return WitnessReport(True)


# -- search ----------------------------------------------------------------

def _joint(ds1: DerivedStructure, ds2: DerivedStructure) -> DerivedStructure:
    n = ds1.edge_count
    quads = list(ds1.quadruples)
    for members, pairing in ds2.quadruples:
        quads.append((tuple(i + n for i in members),
                      tuple((a + n, b + n) for a, b in pairing)))
    return DerivedStructure(ds1.edge_list + ds2.edge_list, tuple(quads),
                            ds1.loose | frozenset(i + n for i in ds2.loose))


def _balanced(colors, n):
    left, right = {}, {}
    for c in colors[:n]:
        left[c] = left.get(c, 0) + 1
    for c in colors[n:]:
        right[c] = right.get(c, 0) + 1
    return left == right


def _individualize_pair(colors, a, b):
    c = colors[a]
    keyed = [(x, 0) if (x != c or i in (a, b)) else (x, 1) for i, x in enumerate(colors)]
    rank = {k: r for r, k in enumerate(sorted(set(keyed)))}
    return [rank[k] for k in keyed]


def _search(ds1: DerivedStructure, ds2: DerivedStructure, stats: dict):
    n = ds1.edge_count
    joint = _joint(ds1, ds2)
    deg = joint.quad_degree()
    inc = joint.incidence()
    # seed colours with per-edge invariant data, then refine jointly
    seed_keys = [(deg[e], tuple(sorted(deg[p] for p, _ in inc[e]))) for e in range(2 * n)]
    rank = {k: r for r, k in enumerate(sorted(set(seed_keys)))}
    colors = refine_colors(joint, [rank[k] for k in seed_keys])
    if not _balanced(colors, n):
        return None
    covered1 = ds1.covered
    quad2 = {frozenset(m): p for m, p in ds2.quadruples}

    def consistent(mapping):
        for members, pairing in ds1.quadruples:
            img = frozenset(mapping[i] for i in members)
            target = quad2.get(img)
            if target is None:
                return False
            tp = {frozenset(p) for p in target}
            if any(frozenset((mapping[a], mapping[b])) not in tp for a, b in pairing):
                return False
        return True

    def recurse(colors):
        stats["nodes"] = stats.get("nodes", 0) + 1
        cells: dict[int, list[int]] = {}
        for e in covered1:
            cells.setdefault(colors[e], []).append(e)
        open_cells = [(len(v), c) for c, v in cells.items() if len(v) > 1]
        if not open_cells:
            by_color = {colors[j]: j - n for j in range(n, 2 * n)}
            mapping = {e: by_color[colors[e]] for e in covered1}
            return mapping if consistent(mapping) else None
        _, c = min(open_cells)
        e = cells[c][0]
        for j in range(n, 2 * n):
            if colors[j] != c:
                continue
            nxt = refine_colors(joint, _individualize_pair(colors, e, j))
            if not _balanced(nxt, n):
                continue
            found = recurse(nxt)
            if found is not None:
                return found
        return None

    return recurse(colors)


def decide_iso(g: BipartiteGraph, g2: BipartiteGraph) -> IsoVerdict:
    ds1, ds2 = derived_structure(g), derived_structure(g2)
    if (ds1.edge_count, len(ds1.quadruples), len(ds1.loose)) != \
            (ds2.edge_count, len(ds2.quadruples), len(ds2.loose)):
        return IsoVerdict(False, None, COUNT_MISMATCH)
    stats: dict = {}
    mapping = _search(ds1, ds2, stats)
    if mapping is None:
        return IsoVerdict(False, None, EXHAUSTED, stats)
    loose1, loose2 = sorted(ds1.loose), sorted(ds2.loose)
    mapping.update(zip(loose1, loose2))
    fwd = {ds1.edge_list[i]: ds2.edge_list[j] for i, j in mapping.items()}
    return IsoVerdict(True, EdgeBijection.from_forward(fwd), None, stats)


# -- brute-force oracle ----------------------------------------------------

@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _is_k22_edges(edges) -> bool:
    us = {e[0] for e in edges}
    vs = {e[1] for e in edges}
    return len(edges) == 4 and len(us) == 2 and len(vs) == 2


def brute_force_iso(g: BipartiteGraph, g2: BipartiteGraph, bound: int = 8) -> IsoVerdict:
    """Test every bijection ``E -> E'`` directly against both conditions.

    Works straight from edge endpoints: a 4-set of edges is a K_{2,2}
    exactly when it spans two U- and two V-vertices.
    """
    n, n2 = len(g.edges), len(g2.edges)
    if n > bound or n2 > bound:
        raise SizeBoundExceeded(f"brute force limited to {bound} edges, got {n} and {n2}")
    if n != n2:
        return IsoVerdict(False, None, COUNT_MISMATCH)
    e1, e2 = list(g.edges), list(g2.edges)
    perms = _perm_table(n)
    ok = np.ones(len(perms), dtype=bool)
    k22_target = np.zeros(1 << n, dtype=bool)
    for s in combinations(range(n), 4):
        if _is_k22_edges([e2[i] for i in s]):
            k22_target[sum(1 << i for i in s)] = True
    adj2 = np.array([[edges_adjacent(a, b) for b in e2] for a in e2], dtype=bool).reshape(n, n)
    bit = 1 << perms
    for s in combinations(range(n), 4):
        src = _is_k22_edges([e1[i] for i in s])
        mask = bit[:, s[0]] | bit[:, s[1]] | bit[:, s[2]] | bit[:, s[3]]
        ok &= k22_target[mask] == src
        if src:
            for a, b in combinations(s, 2):
                ok &= adj2[perms[:, a], perms[:, b]] == edges_adjacent(e1[a], e1[b])
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return IsoVerdict(False, None, EXHAUSTED, {"bijections": len(perms)})
    p = perms[hits[0]]
    fwd = {e1[i]: e2[int(p[i])] for i in range(n)}
    return IsoVerdict(True, EdgeBijection.from_forward(fwd), None,
                      {"bijections": len(perms), "witnesses": int(len(hits))})
