import random

import pytest
from hypothesis import settings, strategies as st

from bipgraph_cstar.graph import complete_bipartite, disjoint_union, new_graph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def k22():
    return complete_bipartite(2, 2)


def e(k):
    """Edge e_k of K_{2,2}: e1=u1v1, e2=u1v2, e3=u2v1, e4=u2v2."""
    return k22().edges[k - 1]


def single_edge():
    return new_graph(["u"], ["v"], [("u", "v")])


def path3():
    return new_graph(["u1", "u2"], ["v1", "v2"], [("u1", "v1"), ("u2", "v1"), ("u2", "v2")])


def k22_pendant():
    return new_graph(["u1", "u2"], ["v1", "v2", "v3"],
                     list(k22().edges) + [("u1", "v3")])


def k22_plus_edge():
    return disjoint_union(k22(), new_graph(["u3"], ["v3"], [("u3", "v3")]))


def matching(n):
    return new_graph([f"a{i}" for i in range(n)], [f"b{i}" for i in range(n)],
                     [(f"a{i}", f"b{i}") for i in range(n)])


@st.composite
def graphs(draw, max_side=4, max_edges=8, min_edges=1):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    cells = [(i, j) for i in range(a) for j in range(b)]
    chosen = draw(st.sets(st.sampled_from(cells), min_size=min(min_edges, len(cells)),
                          max_size=min(max_edges, len(cells))))
    return new_graph([f"u{i + 1}" for i in range(a)], [f"v{j + 1}" for j in range(b)],
                     [(f"u{i + 1}", f"v{j + 1}") for i, j in chosen])


@pytest.fixture
def rng():
    return random.Random(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
