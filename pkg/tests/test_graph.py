from itertools import combinations
from math import comb

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from bipgraph_cstar.errors import (
    CrossSideEdge,
    DuplicateLabel,
    EdgeNotLoose,
    EmptySource,
    ParseError,
    UnknownEdge,
    UnknownEndpoint,
    UnknownVertex,
)
from bipgraph_cstar.graph import (
    Hypergraph,
    collapse_repeats,
    complete_bipartite,
    contains_k23,
    delete_edge,
    enumerate_k22,
    from_hypergraph,
    graph_from_json,
    graph_to_json,
    hypergraph_from_json,
    hypergraph_to_json,
    induced_by_edges,
    induced_by_vertices,
    is_connected,
    is_graph_isomorphic,
    is_path,
    loose_edges,
    neighbors,
    new_graph,
    parse_json_text,
    reduce_all_loose,
    reduce_loose_edge,
    relabel,
    swap_sides,
    to_dot,
)
from conftest import e, graphs, k22, k22_pendant, matching, path3, single_edge


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.u_labels, bipartite=0)
    h.add_nodes_from(g.v_labels, bipartite=1)
    h.add_edges_from(g.edges)
    return h


def nx_iso(g, h):
    # side swap is allowed, so plain graph isomorphism with side colours up to swap
    a, b = to_nx(g), to_nx(h)
    same = nx.is_isomorphic(a, b, node_match=lambda x, y: x["bipartite"] == y["bipartite"])
    crossed = nx.is_isomorphic(a, b, node_match=lambda x, y: x["bipartite"] != y["bipartite"])
    return same or crossed


def brute_k22(g):
    out = []
    for s in combinations(g.edges, 4):
        if len({x[0] for x in s}) == 2 and len({x[1] for x in s}) == 2:
            out.append(frozenset(s))
    return out


# -- construction ------------------------------------------------------------

def test_new_graph_k22():
    g = new_graph(["u1", "u2"], ["v1", "v2"],
                  [("u2", "v2"), ("v1", "u1"), ("u1", "v2"), ("u2", "v1")])
    assert g == complete_bipartite(2, 2)
    assert g.edges == (("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2"))


def test_new_graph_single_edge():
    g = single_edge()
    assert g.edges == (("u", "v"),)


@pytest.mark.parametrize("args, exc", [
    ((["u1", "u2"], ["v1"], [("u1", "u2")]), CrossSideEdge),
    ((["u1", "u1"], ["v1"], []), DuplicateLabel),
    ((["x"], ["x"], []), DuplicateLabel),
    ((["u1"], ["v1"], [("u1", "w")]), UnknownEndpoint),
])
def test_new_graph_errors(args, exc):
    with pytest.raises(exc):
        new_graph(*args)


def test_neighbors():
    assert neighbors(k22(), "u1") == {"v1", "v2"}
    assert neighbors(single_edge(), "u") == {"v"}
    assert neighbors(complete_bipartite(2, 3), "v1") == {"u1", "u2"}
    with pytest.raises(UnknownVertex):
        neighbors(k22(), "zz")


def test_induced_by_vertices():
    assert induced_by_vertices(k22(), ["u1", "u2", "v1", "v2"]) == k22()
    assert induced_by_vertices(k22(), ["u1", "v1"]).edges == (("u1", "v1"),)
    assert is_graph_isomorphic(induced_by_vertices(complete_bipartite(2, 3), ["u1", "u2", "v1", "v2"]), k22())
    with pytest.raises(UnknownVertex):
        induced_by_vertices(k22(), ["u9"])


def test_induced_by_edges():
    assert induced_by_edges(k22(), k22().edges) == k22()
    opp = induced_by_edges(k22(), [e(1), e(4)])
    assert len(opp.vertices) == 4 and is_graph_isomorphic(opp, matching(2))
    adj = induced_by_edges(k22(), [e(1), e(2)])
    assert adj.u_labels == ("u1",) and len(adj.edges) == 2
    with pytest.raises(UnknownEdge):
        induced_by_edges(single_edge(), [("u", "w")])


def test_graph_isomorphism_examples():
    g = k22()
    assert is_graph_isomorphic(g, relabel(g, {"u1": "a", "u2": "b", "v1": "c", "v2": "d"}))
    assert is_graph_isomorphic(complete_bipartite(2, 3), complete_bipartite(3, 2))
    assert not is_graph_isomorphic(g, matching(4))


@given(graphs(), graphs())
def test_graph_isomorphism_matches_networkx(g, h):
    assert is_graph_isomorphic(g, h) == nx_iso(g, h)


@given(graphs(), st.randoms(use_true_random=False))
def test_graph_isomorphism_relabel_and_swap(g, r):
    verts = list(g.vertices)
    fresh = [f"x{i}" for i in range(len(verts))]
    r.shuffle(fresh)
    h = relabel(g, dict(zip(verts, fresh)))
    assert is_graph_isomorphic(g, h)
    assert is_graph_isomorphic(g, swap_sides(h))
    ok, mapping, _ = is_graph_isomorphic(g, h, return_map=True)
    assert ok and mapping is not None


@given(graphs(max_edges=5), graphs(max_edges=5), graphs(max_edges=5))
def test_graph_isomorphism_equivalence(a, b, c):
    assert is_graph_isomorphic(a, a)
    assert is_graph_isomorphic(a, b) == is_graph_isomorphic(b, a)
    if is_graph_isomorphic(a, b) and is_graph_isomorphic(b, c):
        assert is_graph_isomorphic(a, c)


def test_is_path():
    assert is_path(k22(), ["u1", "v1", "u2"])
    assert not is_path(k22(), ["u1", "u2"])
    assert is_path(single_edge(), ["u", "v", "u", "v"])
    with pytest.raises(UnknownVertex):
        is_path(k22(), ["u1", "q"])


def test_collapse_repeats():
    assert collapse_repeats(["a", "a", "b", "b", "b", "a"]) == ("a", "b", "a")


# -- quadruples ----------------------------------------------------------------

def test_enumerate_k22_examples():
    (q,) = enumerate_k22(k22())
    assert set(q.members) == set(k22().edges)
    assert {frozenset(p) for p in q.pairing} == {frozenset((e(1), e(4))), frozenset((e(2), e(3)))}
    assert enumerate_k22(single_edge()) == []
    assert len(enumerate_k22(complete_bipartite(3, 3))) == 9


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("n", range(1, 5))
def test_quadruple_count_complete(m, n):
    g = complete_bipartite(m, n)
    quads = enumerate_k22(g)
    assert len(quads) == comb(m, 2) * comb(n, 2)
    assert {frozenset(q.members) for q in quads} == set(brute_k22(g))


@given(graphs())
def test_quadruple_invariants(g):
    quads = enumerate_k22(g)
    assert {frozenset(q.members) for q in quads} == set(brute_k22(g))
    assert len({frozenset(q.members) for q in quads}) == len(quads)
    for q in quads:
        assert is_graph_isomorphic(induced_by_edges(g, q.members), k22())
        classes = [frozenset(p) for p in q.pairing]
        assert classes[0] != classes[1] and classes[0] | classes[1] == set(q.members)
        for a, b in q.pairing:
            assert not set(a) & set(b)
            assert q.partner(a) == b and q.partner(b) == a
    covered = {x for q in quads for x in q.members}
    loose = set(loose_edges(g))
    assert not covered & loose and covered | loose == set(g.edges)


def test_enumerate_k22_deterministic():
    g = complete_bipartite(3, 4)
    assert enumerate_k22(g) == enumerate_k22(g)


def test_loose_edges_examples():
    assert loose_edges(k22()) == []
    assert set(loose_edges(path3())) == set(path3().edges)
    assert loose_edges(k22_pendant()) == [("u1", "v3")]


def brute_k23(g):
    for side, other in ((g.u_labels, g.v_labels), (g.v_labels, g.u_labels)):
        for a, b in combinations(side, 2):
            for c in combinations(other, 3):
                if all(g.adjacent(x, y) for x in (a, b) for y in c):
                    return True
    return False


def test_contains_k23_examples():
    assert contains_k23(complete_bipartite(2, 3))
    assert contains_k23(complete_bipartite(3, 2))
    assert not contains_k23(k22())
    assert contains_k23(complete_bipartite(3, 3))


@given(graphs(max_side=5, max_edges=12))
def test_contains_k23_matches_subset_search(g):
    assert contains_k23(g) == brute_k23(g)


# -- hypergraphs ---------------------------------------------------------------

def test_from_hypergraph_examples():
    g = from_hypergraph(Hypergraph(("v",), ("e",), {"e": frozenset({"v"})}))
    assert g.edges == (("v", "e"),)
    g = from_hypergraph(Hypergraph(("v1", "v2"), ("e",), {"e": frozenset({"v1", "v2"})}))
    assert is_path(g, ["v1", "e", "v2"]) and len(g.edges) == 2
    g = from_hypergraph(Hypergraph(("v1", "v2"), ("e1", "e2"),
                                   {"e1": frozenset({"v1", "v2"}), "e2": frozenset({"v1", "v2"})}))
    assert is_graph_isomorphic(g, k22())
    assert g.u_labels == ("v1", "v2")


def test_hypergraph_validation():
    with pytest.raises(EmptySource):
        Hypergraph(("v",), ("e",), {"e": frozenset()})
    with pytest.raises(UnknownVertex):
        Hypergraph(("v",), ("e",), {"e": frozenset({"w"})})


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_from_hypergraph_properties(nv, ne, data):
    verts = tuple(f"p{i}" for i in range(nv))
    hedges = tuple(f"h{i}" for i in range(ne))
    src = {h: frozenset(data.draw(st.sets(st.sampled_from(verts), min_size=1))) for h in hedges}
    hg = Hypergraph(verts, hedges, src)
    g = from_hypergraph(hg)
    assert g.u_labels == verts
    assert len(set(g.edges)) == len(g.edges) == sum(len(s) for s in src.values())
    assert hypergraph_from_json(hypergraph_to_json(hg)) == hg


# -- reductions ------------------------------------------------------------------

def test_reduce_loose_edge_examples():
    g, inc = reduce_loose_edge(k22_pendant(), ("u1", "v3"))
    assert inc == 1 and g.edges == k22().edges and "v3" in g.v_labels and g.degree("v3") == 0
    g, count = reduce_all_loose(path3())
    assert count == 3 and g.edges == ()
    with pytest.raises(EdgeNotLoose):
        reduce_loose_edge(k22(), e(1))
    with pytest.raises(UnknownEdge):
        reduce_loose_edge(k22(), ("u1", "v9"))


@given(graphs())
def test_reduce_loose_edge_properties(g):
    quads = enumerate_k22(g)
    for x in loose_edges(g):
        h, inc = reduce_loose_edge(g, x)
        assert inc == 1 and len(h.edges) == len(g.edges) - 1
        assert enumerate_k22(h) == quads
    h, count = reduce_all_loose(g)
    assert count == len(loose_edges(g)) and loose_edges(h) == []


def test_delete_edge_and_connectivity():
    assert is_connected(k22())
    assert not is_connected(matching(2))
    assert not is_connected(delete_edge(path3(), ("u2", "v1")))


# -- JSON and DOT ----------------------------------------------------------------

@given(graphs())
def test_json_round_trip(g):
    assert graph_from_json(graph_to_json(g)) == g


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_json_text('{"u": ["a"],\n  "v": [}')
    assert info.value.line == 2 and info.value.column is not None


def test_graph_from_json_bad_shape():
    with pytest.raises(ParseError):
        graph_from_json({"u": ["a"]})


def test_dot_export():
    dot = to_dot(k22())
    assert dot.startswith("graph")
    assert dot.count("--") == 4
    assert dot.count("filled") == 2
