"""Projection families in generic position at finite dimension.

A contraction family is a block matrix ``W = (C_uv)`` from ``K^V`` to ``K^U``
that is unitary and vanishes on the non-edge blocks. Unitarity of ``W`` is
exactly the pair of conditions ``sum_u C_uv1* C_uv2 = delta`` (columns) and
``sum_v C_u1v C_u2v* = delta`` (rows). It yields a G-projection family on
``K^V`` with ``P_v`` the coordinate blocks and ``P_u = W_u* W_u``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateBlock,
    DisconnectedGraph,
    InvariantViolation,
    Nonconvergence,
    NotGenericPosition,
    NotK22,
    ParseError,
    RankMismatch,
    SideCountMismatch,
)
from .graph import BipartiteGraph, edge_key, is_connected
from .reps import TAU, Representation, check_gp, max_dev

log = logging.getLogger(__name__)

MIN_SINGULAR = 1e-6
ACCEPT_TOL = 1e-8
RANK_TOL = 1e-7


@dataclass(frozen=True)
class SynthesisConfig:
    k: int = 1
    seed: int = 0
    max_iter: int = 5000
    tol: float = 1e-10
    accept_tol: float = ACCEPT_TOL
    real: bool = False


@dataclass(frozen=True)
class ContractionFamily:
    graph: BipartiteGraph
    k: int
    blocks: Mapping[tuple[str, str], np.ndarray]
    info: dict = field(default_factory=dict, compare=False)

    def block_matrix(self) -> np.ndarray:
        g, k = self.graph, self.k
        w = np.zeros((len(g.u_labels) * k, len(g.v_labels) * k), dtype=complex)
        for i, u in enumerate(g.u_labels):
            for j, v in enumerate(g.v_labels):
                w[i * k:(i + 1) * k, j * k:(j + 1) * k] = self.blocks[(u, v)]
        return w

    def residuals(self) -> dict[str, float]:
        w = self.block_matrix()
        return {"columns": max_dev(w.conj().T @ w - np.eye(w.shape[1])),
                "rows": max_dev(w @ w.conj().T - np.eye(w.shape[0]))}

    def min_edge_singular(self) -> float:
        vals = [np.linalg.svd(self.blocks[e], compute_uv=False)[-1] for e in self.graph.edges]
        return float(min(vals)) if vals else 0.0

    def to_json(self) -> dict:
        def enc(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]
        return {"k": self.k,
                "blocks": {edge_key((u, v)): enc(self.blocks[(u, v)])
                           for u in self.graph.u_labels for v in self.graph.v_labels}}

    @classmethod
    def from_json(cls, g: BipartiteGraph, obj) -> "ContractionFamily":
        try:
            k = int(obj["k"])
            blocks = {}
            for u in g.u_labels:
                for v in g.v_labels:
                    raw = obj["blocks"].get(edge_key((u, v)))
                    if raw is None:
                        blocks[(u, v)] = np.zeros((k, k), dtype=complex)
                        continue
                    arr = np.asarray(raw, dtype=float)
                    blocks[(u, v)] = (arr[..., 0] + 1j * arr[..., 1]) if arr.ndim == 3 else arr.astype(complex)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad contraction family JSON: {exc}") from None
        return cls(g, k, blocks)


def _pattern(g: BipartiteGraph, k: int) -> np.ndarray:
    mask = np.zeros((len(g.u_labels) * k, len(g.v_labels) * k), dtype=bool)
    for u, v in g.edges:
        i, j = g.u_index[u], g.v_index[v]
        mask[i * k:(i + 1) * k, j * k:(j + 1) * k] = True
    return mask


def _polar_unitary(a: np.ndarray) -> np.ndarray:
    x, _, yh = np.linalg.svd(a)
    return x @ yh


def _require_shape(g: BipartiteGraph):
    if not is_connected(g):
        raise DisconnectedGraph("generic-position families need a connected graph")
    if len(g.u_labels) != len(g.v_labels):
        raise SideCountMismatch(
            f"finite dimension needs |U| = |V|, got {len(g.u_labels)} and {len(g.v_labels)}")


def synthesize(g: BipartiteGraph, k: int = 1, seed: int = 0, max_iter: int = 5000,
               tol: float = 1e-10, accept_tol: float = ACCEPT_TOL, real: bool = False) -> ContractionFamily:
    """Alternate between the nearest unitary and the edge-support pattern.

    Stops once the pattern-restricted iterate is unitary within ``tol``. After
    ``max_iter`` the result is still accepted if the residual is within
    ``accept_tol``; otherwise :class:`Nonconvergence` is raised.
    """
    _require_shape(g)
    if k < 1:
        raise ValueError("block size must be positive")
    rng = np.random.default_rng(seed)
    mask = _pattern(g, k)
    shape = mask.shape
    w = rng.standard_normal(shape)
    if not real:
        w = w + 1j * rng.standard_normal(shape)
    w = np.where(mask, w, 0).astype(complex)
    eye = np.eye(shape[0])
    residual = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        w = np.where(mask, _polar_unitary(w), 0)
        residual = max(max_dev(w.conj().T @ w - eye), max_dev(w @ w.conj().T - eye))
        if residual <= tol:
            break
    log.debug("synthesis seed=%d k=%d: residual %.3e after %d iterations", seed, k, residual, it)
    if residual > accept_tol:
        raise Nonconvergence(f"residual {residual:.3e} after {it} iterations", residual, it)
    blocks = {}
    for u in g.u_labels:
        for v in g.v_labels:
            i, j = g.u_index[u], g.v_index[v]
            blocks[(u, v)] = w[i * k:(i + 1) * k, j * k:(j + 1) * k].copy()
    cf = ContractionFamily(g, k, blocks, {"seed": seed, "iterations": it, "residual": residual})
    smin = cf.min_edge_singular()
    if smin < MIN_SINGULAR:
        raise DegenerateBlock(f"edge block smallest singular value {smin:.3e} below {MIN_SINGULAR}", smin)
    return cf


@dataclass(frozen=True)
class ProjectionFamilyGP:
    rep: Representation
    k: int
    layout: tuple[str, ...]     # V vertices in block order

    @classmethod
    def from_representation(cls, rep: Representation) -> "ProjectionFamilyGP":
        ranks = {_rank(rep[x]) for x in rep.graph.vertices}
        k = ranks.pop() if len(ranks) == 1 else 0
        return cls(rep, k, tuple(rep.graph.v_labels))


def check_family(cf: ContractionFamily, tol: float = ACCEPT_TOL) -> list[str]:
    problems = []
    g = cf.graph
    for u in g.u_labels:
        for v in g.v_labels:
            b = cf.blocks[(u, v)]
            if b.shape != (cf.k, cf.k):
                problems.append(f"block {u},{v} has shape {b.shape}")
            elif not g.has_edge(u, v) and max_dev(b) > tol:
                problems.append(f"non-edge block {u},{v} is nonzero")
    if problems:
        return problems
    smin = cf.min_edge_singular()
    if smin < MIN_SINGULAR:
        problems.append(f"edge block not invertible (smallest singular value {smin:.3e})")
    res = cf.residuals()
    for name, r in res.items():
        if r > tol:
            problems.append(f"{name} condition residual {r:.3e}")
    return problems


def build_projection_family(cf: ContractionFamily, tol: float = ACCEPT_TOL) -> ProjectionFamilyGP:
    problems = check_family(cf, tol)
    if problems:
        raise InvariantViolation("; ".join(problems))
    g, k = cf.graph, cf.k
    nv = len(g.v_labels)
    d = nv * k
    w = cf.block_matrix()
    images = {}
    for i, u in enumerate(g.u_labels):
        wu = w[i * k:(i + 1) * k, :]
        images[u] = wu.conj().T @ wu
    for j, v in enumerate(g.v_labels):
        p = np.zeros((d, d), dtype=complex)
        p[j * k:(j + 1) * k, j * k:(j + 1) * k] = np.eye(k)
        images[v] = p
    return ProjectionFamilyGP(Representation(g, d, images), k, tuple(g.v_labels))


# -- rank arithmetic ---------------------------------------------------------

def _rank(a: np.ndarray, tol: float = RANK_TOL) -> int:
    if a.size == 0:
        return 0
    sv = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(sv > tol))


def range_basis(p: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the range of a projection via pivoted QR."""
    r = _rank(p, tol)
    q, _, _ = scipy.linalg.qr(p, pivoting=True)
    return q[:, :r]


def intersection_dim(a: np.ndarray, b: np.ndarray, tol: float = RANK_TOL) -> int:
    """dim(span A and span B) = rank A + rank B - rank [A|B]."""
    return _rank(a, tol) + _rank(b, tol) - _rank(np.hstack([a, b]), tol)


@dataclass
class GenericPositionReport:
    edges: dict[tuple[str, str], tuple[int, int]]

    @property
    def passed(self) -> bool:
        return all(a == 0 and b == 0 for a, b in self.edges.values())

    def to_json(self) -> dict:
        return {"pass": self.passed,
                "edges": {edge_key(e): {"im_u_ker_v": a, "ker_u_im_v": b}
                          for e, (a, b) in self.edges.items()}}


def _as_rep(pf) -> Representation:
    return pf.rep if isinstance(pf, ProjectionFamilyGP) else pf


def check_generic_position(pf, tol: float = RANK_TOL) -> GenericPositionReport:
    rep = _as_rep(pf)
    eye = np.eye(rep.dim)
    out = {}
    for u, v in rep.graph.edges:
        pu, pv = rep[u], rep[v]
        out[(u, v)] = (intersection_dim(pu, eye - pv, tol), intersection_dim(eye - pu, pv, tol))
    return GenericPositionReport(out)


def extract_contractions(pf, gp_tol: float = ACCEPT_TOL) -> ContractionFamily:
    """Recover ``C_uv = B_u* B_v`` from orthonormal range bases ``B_x``."""
    rep = _as_rep(pf)
    g = rep.graph
    _require_shape(g)
    if not check_gp(rep, gp_tol).passed:
        raise InvariantViolation("input is not a G-projection family")
    if not check_generic_position(rep).passed:
        raise NotGenericPosition("projections are not in generic position")
    bases = {x: range_basis(rep[x]) for x in g.vertices}
    ranks = {x: b.shape[1] for x, b in bases.items()}
    if len(set(ranks.values())) != 1:
        raise RankMismatch(f"projection ranks differ: {ranks}")
    k = next(iter(ranks.values()))
    blocks = {(u, v): bases[u].conj().T @ bases[v] for u in g.u_labels for v in g.v_labels}
    for u in g.u_labels:
        for v in g.v_labels:
            if not g.has_edge(u, v):
                blocks[(u, v)] = np.zeros((k, k), dtype=complex)
    return ContractionFamily(g, k, blocks)


def pair_traces(rep: Representation) -> np.ndarray:
    """Matrix of ``tr(P_x P_y)`` over all vertex pairs; a unitary-equivalence invariant."""
    xs = rep.graph.vertices
    return np.array([[np.trace(rep[x] @ rep[y]) for y in xs] for x in xs])


# -- the two-projection case ---------------------------------------------------

@dataclass(frozen=True)
class HalmosData:
    C: np.ndarray
    S: np.ndarray
    deviation: float            # max-norm of C^2 + S^2 - I
    coupling_deviation: float   # singular values of the off-diagonal block vs eigenvalues of CS

    def to_json(self) -> dict:
        return {"C_eigenvalues": np.linalg.eigvalsh(self.C).tolist(),
                "S_eigenvalues": np.linalg.eigvalsh(self.S).tolist(),
                "deviation": self.deviation, "coupling_deviation": self.coupling_deviation}


def _psd_sqrt(a: np.ndarray) -> np.ndarray:
    a = (a + a.conj().T) / 2
    w, q = np.linalg.eigh(a)
    return (q * np.sqrt(np.clip(w, 0, None))) @ q.conj().T


def halmos_decompose(pf, tol: float = ACCEPT_TOL) -> HalmosData:
    """Positive ``C, S`` with ``P_v1`` compressed to the ranges of ``P_u1``, ``P_u2``.

    In bases adapted to ``L_u1`` and ``L_u2``, ``P_v1`` has diagonal blocks
    ``C^2`` and ``S^2`` (up to the unitary identifying the two ranges) and an
    off-diagonal block whose singular values are those of ``CS``.
    """
    rep = _as_rep(pf)
    g = rep.graph
    if len(g.u_labels) != 2 or len(g.v_labels) != 2 or len(g.edges) != 4:
        raise NotK22("Halmos decomposition needs the graph K_{2,2}")
    if not check_generic_position(rep).passed:
        raise NotGenericPosition("projections are not in generic position")
    u1, u2 = g.u_labels
    v1, v2 = g.v_labels
    b1, b2 = range_basis(rep[u1]), range_basis(rep[u2])
    c = _psd_sqrt(b1.conj().T @ rep[v1] @ b1)
    s = _psd_sqrt(b1.conj().T @ rep[v2] @ b1)
    dev = max_dev(c @ c + s @ s - np.eye(c.shape[0]))
    off = np.sort(np.linalg.svd(b1.conj().T @ rep[v1] @ b2, compute_uv=False))
    cs = np.sort(np.abs(np.linalg.eigvals(c @ s)))
    coupling = float(np.max(np.abs(off - cs))) if off.shape == cs.shape else np.inf
    if dev > tol:
        raise InvariantViolation(f"C^2 + S^2 deviates from I by {dev:.3e}")
    return HalmosData(c, s, dev, coupling)


def family_report(cf: ContractionFamily, tol: float = TAU) -> dict:
    """Synthesis outcome plus all downstream verifications, as plain JSON."""
    pf = build_projection_family(cf)
    gp = check_gp(pf.rep, max(tol, ACCEPT_TOL))
    gen = check_generic_position(pf)
    back = extract_contractions(pf)
    rebuilt = build_projection_family(back)
    trace_dev = max_dev(pair_traces(pf.rep) - pair_traces(rebuilt.rep))
    out = {
        "k": cf.k,
        "residuals": cf.residuals(),
        "min_edge_singular_value": cf.min_edge_singular(),
        "info": {k: (float(v) if isinstance(v, (float, np.floating)) else v) for k, v in cf.info.items()},
        "check_gp": gp.to_json(),
        "generic_position": gen.to_json(),
        "round_trip_trace_deviation": trace_dev,
        "ranks": {x: _rank(pf.rep[x]) for x in cf.graph.vertices},
        "family": cf.to_json(),
    }
    if len(cf.graph.u_labels) == 2 and len(cf.graph.edges) == 4:
        out["halmos"] = halmos_decompose(pf).to_json()
    return out
