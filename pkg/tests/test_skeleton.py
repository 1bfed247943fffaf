import random

import pytest
from hypothesis import given, strategies as st

from bipgraph_cstar import corpus
from bipgraph_cstar.graph import complete_bipartite, disjoint_union, new_graph, relabel, swap_sides
from bipgraph_cstar.iso import brute_force_iso
from bipgraph_cstar.skeleton import (
    canonical_certificate,
    certificate_hex,
    derived_structure,
    invariant_vector,
    spec_skeleton,
)
from conftest import e, graphs, k22, k22_pendant, k22_plus_edge, matching, single_edge


def random_relabel(g, r):
    verts = list(g.vertices)
    fresh = [f"z{i}" for i in range(len(verts))]
    r.shuffle(fresh)
    u_order = list(range(len(g.u_labels)))
    v_order = list(range(len(g.v_labels)))
    r.shuffle(u_order)
    r.shuffle(v_order)
    h = relabel(g, dict(zip(verts, fresh)), u_order, v_order)
    return swap_sides(h) if r.random() < 0.5 else h


def test_derived_structure_examples():
    ds = derived_structure(k22())
    assert (ds.edge_count, len(ds.quadruples), len(ds.loose)) == (4, 1, 0)
    ds = derived_structure(new_graph([], [], []))
    assert (ds.edge_count, len(ds.quadruples), len(ds.loose)) == (0, 0, 0)
    ds = derived_structure(k22_pendant())
    assert (ds.edge_count, len(ds.quadruples), len(ds.loose)) == (5, 1, 1)


@given(graphs())
def test_derived_structure_invariants(g):
    ds = derived_structure(g)
    for members, pairing in ds.quadruples:
        assert not set(members) & ds.loose
        assert {x for p in pairing for x in p} == set(members)
        for a, b in pairing:
            ea, eb = ds.edge_list[a], ds.edge_list[b]
            assert ea[0] != eb[0] and ea[1] != eb[1]


def test_spec_skeleton_k22():
    sk = spec_skeleton(k22())
    assert sk.clopen_points == ()
    (c,) = sk.components
    assert set(c.non_hausdorff_pairs()) == {frozenset((e(1), e(4))), frozenset((e(2), e(3)))}
    assert set(c.boundary.values()) == set(k22().edges)
    assert sk.to_json() == {
        "clopen": [],
        "components": [{"edges": ["u1,v1", "u1,v2", "u2,v1", "u2,v2"],
                        "pairing": [["u1,v1", "u2,v2"], ["u1,v2", "u2,v1"]]}],
    }


def test_spec_skeleton_other_examples():
    assert spec_skeleton(single_edge()).clopen_points == (("u", "v"),)
    two = spec_skeleton(disjoint_union(k22(), k22()))
    assert len(two.components) == 2 and two.clopen_points == ()


@given(graphs())
def test_skeleton_counts(g):
    sk = spec_skeleton(g)
    ds = derived_structure(g)
    assert len(sk.components) == len(ds.quadruples)
    assert len(sk.clopen_points) == len(ds.loose)


def test_invariant_vector_examples():
    iv = invariant_vector(derived_structure(k22()))
    assert (iv.edge_count, iv.loose_count, iv.quadruple_count) == (4, 0, 1)
    assert iv.degree_multiset == (1, 1, 1, 1)
    iv = invariant_vector(derived_structure(matching(4)))
    assert (iv.edge_count, iv.loose_count, iv.quadruple_count, iv.degree_multiset) == (4, 4, 0, (0, 0, 0, 0))
    iv = invariant_vector(derived_structure(complete_bipartite(2, 3)))
    assert (iv.edge_count, iv.loose_count, iv.quadruple_count) == (6, 0, 3)
    assert iv.degree_multiset == (2,) * 6


def test_certificate_examples():
    g = k22()
    h = relabel(g, {"u1": "p", "u2": "q", "v1": "r", "v2": "s"})
    assert canonical_certificate(derived_structure(g)) == canonical_certificate(derived_structure(h))
    assert certificate_hex(k22_pendant()) == certificate_hex(k22_plus_edge())
    assert certificate_hex(k22()) != certificate_hex(matching(4))
    assert certificate_hex(g) == certificate_hex(g).lower()


@pytest.mark.parametrize("g", [k22(), k22_pendant(), complete_bipartite(2, 3), complete_bipartite(3, 3),
                               complete_bipartite(3, 4), matching(3)],
                         ids=["k22", "pendant", "k23", "k33", "k34", "matching"])
def test_relabel_invariance_100(g):
    r = random.Random(7)
    iv = invariant_vector(derived_structure(g))
    cert = certificate_hex(g)
    for _ in range(100):
        h = random_relabel(g, r)
        assert invariant_vector(derived_structure(h)) == iv
        assert certificate_hex(h) == cert


@given(graphs(), st.randoms(use_true_random=False))
def test_relabel_invariance_random_graphs(g, r):
    h = random_relabel(g, r)
    assert invariant_vector(derived_structure(h)) == invariant_vector(derived_structure(g))
    assert certificate_hex(h) == certificate_hex(g)


def test_certificate_vs_oracle_exhaustive():
    gs = corpus.exhaustive_graphs(6, 6)
    certs = [certificate_hex(g) for g in gs]
    for i, a in enumerate(gs):
        for j, b in enumerate(gs):
            if j < i:
                continue
            same = certs[i] == certs[j]
            assert same == brute_force_iso(a, b).isomorphic, (a, b)


def test_certificate_vs_oracle_random():
    r = random.Random(11)
    for _ in range(200):
        a = corpus.random_graph(r, max_edges=8, max_side=4, min_edges=4)
        b = corpus.random_graph(r, max_edges=len(a.edges), max_side=4, min_edges=len(a.edges))
        if len(b.edges) != len(a.edges):
            continue
        assert (certificate_hex(a) == certificate_hex(b)) == brute_force_iso(a, b).isomorphic
