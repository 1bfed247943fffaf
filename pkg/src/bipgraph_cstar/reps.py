"""Matrix representations of C*(G) of dimension one and two, and checks on them.

A representation assigns a projection matrix to each vertex. Constructors build
the one-dimensional ``pi_e`` (one per edge) and the two-dimensional
``sigma_{H,t}`` (one per K_{2,2} subgraph ``H`` and ``0 < t < 1``). The checks
report max-norm deviations of the defining relations, of the edge-generator
relations, and of the homomorphism induced by an edge bijection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    EmptySum,
    GraphMismatch,
    NotAQuadruple,
    NotASubgraph,
    ParameterOutOfRange,
    SideMismatch,
    UnknownEdge,
    UnknownVertex,
    WitnessInvalid,
)
from .graph import (
    BipartiteGraph,
    Edge,
    Quadruple,
    collapse_repeats,
    contains_k23,
    enumerate_k22,
    is_path,
    neighbors,
)

TAU = 1e-9
DEFAULT_T = (0.25, 0.5, 0.75)


def default_t_samples(seed: int = 0, extra: int = 2) -> tuple[float, ...]:
    rng = np.random.default_rng(seed)
    return DEFAULT_T + tuple(float(t) for t in rng.uniform(0.05, 0.95, size=extra))


def max_dev(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True)
class Summand:
    kind: str           # "pi" or "sigma"
    key: tuple          # edge for pi, (quadruple members, t) for sigma
    offset: int
    dim: int


@dataclass(frozen=True)
class Representation:
    graph: BipartiteGraph
    dim: int
    images: Mapping[str, np.ndarray]
    summands: tuple[Summand, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for x in self.graph.vertices:
            m = self.images.get(x)
            if m is None:
                raise UnknownVertex(f"no image for vertex {x!r}")
            if m.shape != (self.dim, self.dim):
                raise ValueError(f"image of {x!r} has shape {m.shape}, expected {self.dim}x{self.dim}")

    def __getitem__(self, x: str) -> np.ndarray:
        try:
            return self.images[x]
        except KeyError:
            raise UnknownVertex(x) from None

    def to_json(self) -> dict:
        def enc(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]
        return {"dim": self.dim, "images": {x: enc(self.images[x]) for x in self.graph.vertices}}

    @classmethod
    def from_json(cls, g: BipartiteGraph, obj) -> "Representation":
        dim = int(obj["dim"])
        images = {}
        for x in g.vertices:
            arr = np.asarray(obj["images"][x], dtype=float).reshape(dim, dim, 2)
            images[x] = arr[..., 0] + 1j * arr[..., 1]
        return cls(g, dim, images)


def _zeros(d):
    return np.zeros((d, d), dtype=complex)


def rep_pi(g: BipartiteGraph, e: Sequence[str]) -> Representation:
    """One-dimensional representation: 1 on the endpoints of ``e``, 0 elsewhere."""
    if not g.has_edge(e[0], e[1]):
        raise UnknownEdge(tuple(e))
    e = g.orient(e[0], e[1])
    images = {x: np.array([[1.0 if x in e else 0.0]], dtype=complex) for x in g.vertices}
    return Representation(g, 1, images, (Summand("pi", e, 0, 1),))


def _quad_vertices(g: BipartiteGraph, quad) -> tuple[str, str, str, str]:
    if isinstance(quad, Quadruple):
        members = quad.members
    else:
        members = tuple(quad)
    us = sorted({e[0] for e in members}, key=g.u_index.get)
    vs = sorted({e[1] for e in members}, key=g.v_index.get)
    known = {frozenset(q.members) for q in enumerate_k22(g)}
    if len(members) != 4 or frozenset(members) not in known:
        raise NotAQuadruple(f"{members!r} is not a K_{{2,2}} subgraph of the graph")
    return us[0], us[1], vs[0], vs[1]


def sigma_matrices(t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Images of u1, u2, v1, v2 in the two-dimensional irreducible at ``t``."""
    s = math.sqrt(t * (1.0 - t))
    pu1 = np.array([[1, 0], [0, 0]], dtype=complex)
    pu2 = np.array([[0, 0], [0, 1]], dtype=complex)
    pv1 = np.array([[1 - t, s], [s, t]], dtype=complex)
    pv2 = np.array([[t, -s], [-s, 1 - t]], dtype=complex)
    return pu1, pu2, pv1, pv2


def rep_sigma(g: BipartiteGraph, quad, t: float) -> Representation:
    if not (0.0 < t < 1.0):
        raise ParameterOutOfRange(f"t must lie strictly between 0 and 1, got {t}")
    u1, u2, v1, v2 = _quad_vertices(g, quad)
    mats = dict(zip((u1, u2, v1, v2), sigma_matrices(t)))
    images = {x: mats.get(x, _zeros(2)) for x in g.vertices}
    q = Quadruple.from_vertices(u1, u2, v1, v2, g)
    return Representation(g, 2, images, (Summand("sigma", (q.members, t), 0, 2),))


def direct_sum(reps: Sequence[Representation]) -> Representation:
    reps = list(reps)
    if not reps:
        raise EmptySum("direct sum of no representations")
    g = reps[0].graph
    if any(r.graph != g for r in reps):
        raise GraphMismatch("representations are over different graphs")
    dim = sum(r.dim for r in reps)
    images = {x: scipy.linalg.block_diag(*[r.images[x] for r in reps]).astype(complex)
              for x in g.vertices}
    summands = []
    off = 0
    for r in reps:
        for s in r.summands:
            summands.append(Summand(s.kind, s.key, off + s.offset, s.dim))
        off += r.dim
    return Representation(g, dim, images, tuple(summands))


def standard_rep(g: BipartiteGraph, t_samples: Iterable[float] = DEFAULT_T) -> Representation:
    """Direct sum of every ``pi_e`` and every ``sigma_{H,t}`` for the sampled ``t``."""
    ts = tuple(t_samples)
    if not ts:
        raise ParameterOutOfRange("need at least one t sample")
    for t in ts:
        if not (0.0 < t < 1.0):
            raise ParameterOutOfRange(f"t must lie strictly between 0 and 1, got {t}")
    parts = [rep_pi(g, e) for e in g.edges]
    parts += [rep_sigma(g, q, t) for q in enumerate_k22(g) for t in ts]
    return direct_sum(parts)


# -- relation checks ---------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    relation: str
    max_deviation: float
    passed: bool

    def to_json(self) -> dict:
        return {"relation": self.relation, "max_deviation": self.max_deviation, "pass": self.passed}


@dataclass
class CheckReport:
    checks: list[RelationCheck]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_deviation(self) -> float:
        return max((c.max_deviation for c in self.checks), default=0.0)

    def __getitem__(self, name: str) -> RelationCheck:
        for c in self.checks:
            if c.relation == name:
                return c
        raise KeyError(name)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]


def _mk(name, devs, tol):
    d = max(devs, default=0.0)
    return RelationCheck(name, d, d <= tol)


def check_gp(rep: Representation, tol: float = TAU) -> CheckReport:
    g, eye = rep.graph, np.eye(rep.dim)
    proj = []
    for x in g.vertices:
        p = rep[x]
        proj.append(max(max_dev(p - p.conj().T), max_dev(p @ p - p)))
    su = sum((rep[x] for x in g.u_labels), _zeros(rep.dim))
    sv = sum((rep[x] for x in g.v_labels), _zeros(rep.dim))
    gp2 = [max_dev(rep[u] @ rep[v]) for u in g.u_labels for v in g.v_labels
           if not g.has_edge(u, v)]
    return CheckReport([
        _mk("projection", proj, tol),
        _mk("GP1_U", [max_dev(su - eye)], tol),
        _mk("GP1_V", [max_dev(sv - eye)], tol),
        _mk("GP2", gp2, tol),
    ])


def edge_generators(rep: Representation) -> dict[Edge, np.ndarray]:
    return {(u, v): rep[u] @ rep[v] for u, v in rep.graph.edges}


def check_gc(family: Mapping[Edge, np.ndarray], tol: float = TAU) -> CheckReport:
    edges = list(family)
    if not edges:
        return CheckReport([_mk(n, [], tol) for n in ("GC1", "GC2", "GC3", "GC4", "xx*x=x^2")])
    star = {e: family[e].conj().T for e in edges}
    total_star = sum(star.values())
    gc1, gc2, gc3, gc4, prod = [], [], [], [], []
    for e in edges:
        x = family[e]
        gc3.append(max_dev(total_star @ x - x))
        gc4.append(max_dev(x @ total_star - x))
        prod.append(max_dev(x @ star[e] @ x - x @ x))
        for f in edges:
            if e[0] != f[0]:
                gc1.append(max_dev(star[e] @ family[f]))
            if e[1] != f[1]:
                gc2.append(max_dev(x @ star[f]))
    return CheckReport([_mk("GC1", gc1, tol), _mk("GC2", gc2, tol), _mk("GC3", gc3, tol),
                        _mk("GC4", gc4, tol), _mk("xx*x=x^2", prod, tol)])


def evaluate_word(rep: Representation, word: Sequence[str]) -> np.ndarray:
    out = np.eye(rep.dim, dtype=complex)
    for x in word:
        out = out @ rep[x]
    return out


def word_should_vanish(g: BipartiteGraph, word: Sequence[str]) -> bool:
    return not is_path(g, collapse_repeats(word))


@dataclass(frozen=True)
class SandwichReport:
    applicable: bool
    norm: float
    passed: bool


def sandwich_check(rep: Representation, x1: str, y: str, x2: str, tol: float = TAU) -> SandwichReport:
    """``p_x1 p_y p_x2`` must vanish unless ``y`` and a fourth vertex are common neighbours."""
    g = rep.graph
    if len({x1, y, x2}) != 3:
        raise SideMismatch("vertices must be distinct")
    if g.side(x1) != g.side(x2) or g.side(y) == g.side(x1):
        raise SideMismatch("x1, x2 must share a side and y must be on the other side")
    common = neighbors(g, x1) & neighbors(g, x2)
    nonzero_allowed = y in common and len(common) >= 2
    norm = float(np.linalg.norm(rep[x1] @ rep[y] @ rep[x2], 2))
    if nonzero_allowed:
        return SandwichReport(False, norm, True)
    return SandwichReport(True, norm, norm <= tol)


def commutant_dim(rep_or_mats, tol: float = 1e-8) -> int:
    """Dimension of ``{X : X A = A X}`` over all images, via the null space."""
    if isinstance(rep_or_mats, Representation):
        mats = [rep_or_mats[x] for x in rep_or_mats.graph.vertices]
        d = rep_or_mats.dim
    else:
        mats = list(rep_or_mats)
        d = mats[0].shape[0]
    eye = np.eye(d)
    # row-major vec: vec(AX - XA) = (A kron I - I kron A^T) vec(X)
    blocks = [np.kron(a, eye) - np.kron(eye, a.T) for a in mats]
    if not blocks:
        return d * d
    sv = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    scale = max(1.0, sv[0]) if sv.size else 1.0
    return d * d - int(np.sum(sv > tol * scale))


def subgraph_quotient_rep(g: BipartiteGraph, h: BipartiteGraph, rep: Representation) -> Representation:
    """Extend a representation of a subgraph by zero on the remaining vertices."""
    if rep.graph != h:
        raise GraphMismatch("representation is not over the given subgraph")
    same = set(h.u_labels) <= set(g.u_labels) and set(h.v_labels) <= set(g.v_labels)
    swapped = set(h.u_labels) <= set(g.v_labels) and set(h.v_labels) <= set(g.u_labels)
    if not (same or swapped) or not all(g.has_edge(a, b) for a, b in h.edges):
        raise NotASubgraph("h is not a subgraph of g")
    images = {x: rep.images[x] if h.has_vertex(x) else _zeros(rep.dim) for x in g.vertices}
    return Representation(g, rep.dim, images, rep.summands)


# -- the homomorphism induced by an edge bijection ---------------------------

@dataclass(frozen=True)
class PhiContext:
    source: BipartiteGraph
    target: BipartiteGraph
    forward: Mapping[Edge, Edge]

    @property
    def backward(self) -> dict[Edge, Edge]:
        return {b: a for a, b in self.forward.items()}

    def I(self, x: str) -> list[Edge]:
        if not self.source.has_vertex(x):
            raise UnknownVertex(x)
        return [self.forward[e] for e in self.source.edges if x in e]

    def J(self, y: str) -> list[Edge]:
        if not self.target.has_vertex(y):
            raise UnknownVertex(y)
        back = self.backward
        return [back[e] for e in self.target.edges if y in e]


def _edge_sum(edges: Iterable[Edge], images: Mapping[str, np.ndarray], d: int) -> np.ndarray:
    out = _zeros(d)
    for u, v in edges:
        out = out + images[u] @ images[v]
    return out


def phi_image(ctx: PhiContext, x: str, target_rep: Representation) -> np.ndarray:
    if target_rep.graph != ctx.target:
        raise GraphMismatch("representation is not over the target graph")
    return _edge_sum(ctx.I(x), target_rep.images, target_rep.dim)


def verify_phi(g: BipartiteGraph, g2: BipartiteGraph, f, t_samples=DEFAULT_T,
               tol: float = TAU) -> CheckReport:
    """Necessary numerical conditions for ``p_x -> sum_{I(x)} p_u' p_v'`` to be an isomorphism.

    Evaluated in ``standard_rep(g2, t_samples)``: projection property, both
    partitions of unity, orthogonality for non-edges, and the round trip
    through the inverse bijection reproducing every generator of ``g2``.
    """
    from .iso import EdgeBijection, verify_witness

    fwd = f.forward if isinstance(f, EdgeBijection) else dict(f)
    rep_ok = verify_witness(g, g2, fwd)
    if not rep_ok:
        raise WitnessInvalid(rep_ok.violation)
    ctx = PhiContext(g, g2, fwd)
    target = standard_rep(g2, t_samples)
    d = target.dim
    phi = {x: phi_image(ctx, x, target) for x in g.vertices}
    pulled = Representation(g, d, phi)
    gp = check_gp(pulled, tol)
    back = {y: _edge_sum(ctx.J(y), phi, d) for y in g2.vertices}
    trip = [max_dev(back[y] - target[y]) for y in g2.vertices]
    report = CheckReport([
        RelationCheck("projection", gp["projection"].max_deviation, gp["projection"].passed),
        _mk("partition", [gp["GP1_U"].max_deviation, gp["GP1_V"].max_deviation], tol),
        RelationCheck("orthogonality", gp["GP2"].max_deviation, gp["GP2"].passed),
        _mk("round_trip", trip, tol),
    ])
    if contains_k23(g2):
        report.notes.append(NOT_FAITHFUL_NOTE)
    return report


NOT_FAITHFUL_NOTE = ("graph contains K_{2,3}: higher-dimensional irreducibles exist, so these "
                     "checks are necessary conditions only")


def summand_blocks(rep: Representation, e: Edge) -> list[tuple[Summand, np.ndarray]]:
    """Diagonal blocks of ``p_u p_v`` (for ``e = (u, v)``), one per irreducible summand."""
    prod = rep[e[0]] @ rep[e[1]]
    out = []
    for s in rep.summands:
        block = prod[s.offset:s.offset + s.dim, s.offset:s.offset + s.dim]
        out.append((s, block))
    return out
