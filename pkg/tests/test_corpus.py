import random
from itertools import combinations

import networkx as nx

from bipgraph_cstar import corpus
from bipgraph_cstar.graph import is_connected, is_graph_isomorphic


def test_exhaustive_counts_against_subset_enumeration():
    # every edge subset of the 4x4 grid, deduplicated by the complete key
    cells = [(i, j) for i in range(4) for j in range(4)]
    keys = set()
    for m in range(1, 7):
        for s in combinations(cells, m):
            rows = sorted({i for i, _ in s})
            cols = sorted({j for _, j in s})
            ri = {r: k for k, r in enumerate(rows)}
            ci = {c: k for k, c in enumerate(cols)}
            keys.add(corpus.iso_key(len(rows), len(cols), [(ri[i], ci[j]) for i, j in s]))
    assert len(keys) == len(corpus.exhaustive_graphs(6, 4)) == 53


def test_connected_counts_by_vertices():
    gs = corpus.connected_graphs_by_vertices(8)
    assert all(is_connected(g) for g in gs)
    by_n = {}
    for g in gs:
        n = len(g.vertices)
        by_n[n] = by_n.get(n, 0) + 1
    # connected bipartite graphs up to isomorphism (side swap allowed)
    assert [by_n[n] for n in range(2, 9)] == [1, 1, 3, 5, 17, 44, 182]


def test_classes_are_distinct():
    gs = corpus.exhaustive_graphs(5, 5)
    for a, b in combinations(gs, 2):
        assert not is_graph_isomorphic(a, b)


def _atlas_connected_bipartite():
    return [h for h in nx.graph_atlas_g()[1:] if nx.is_connected(h) and nx.is_bipartite(h)]


def test_connected_counts_match_graph_atlas():
    # the atlas lists every graph on at most 7 nodes once
    atlas = _atlas_connected_bipartite()
    ours = corpus.connected_graphs_by_vertices(8)
    for n in range(2, 8):
        assert sum(h.number_of_nodes() == n for h in atlas) == sum(len(g.vertices) == n for g in ours)


def test_connected_by_edges_match_graph_atlas():
    # a connected graph with at most 5 edges has at most 6 nodes
    atlas = _atlas_connected_bipartite()
    ours = corpus.connected_graphs_by_edges(5)
    for m in range(1, 6):
        assert sum(h.number_of_edges() == m for h in atlas) == sum(len(g.edges) == m for g in ours)


def test_random_graph_and_shuffled_copy():
    r = random.Random(0)
    for _ in range(50):
        g = corpus.random_graph(r, 8, 4)
        assert 1 <= len(g.edges) <= 8
        h = corpus.shuffled_copy(g, r)
        assert is_graph_isomorphic(g, h)
        assert set(h.vertices).isdisjoint(g.vertices)
