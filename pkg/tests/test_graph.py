import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lllcolor import graph as G


def brute_cycles(g, max_len):
    """Cycles as vertex sets + edge sets, by trying every vertex sequence."""
    found = set()
    for k in range(3, max_len + 1):
        for seq in itertools.permutations(range(g.vertex_count), k):
            if seq[0] != min(seq) or seq[1] > seq[-1]:
                continue
            if all(g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
                found.add(frozenset(g.edge_id(seq[i], seq[(i + 1) % k]) for i in range(k)))
    return found


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.Graph(n, [p for p, k in zip(pairs, keep) if k])


def test_graph_rejects_bad_edges():
    with pytest.raises(G.GraphError):
        G.Graph(3, [(0, 0)])
    with pytest.raises(G.GraphError):
        G.Graph(3, [(0, 3)])
    with pytest.raises(G.GraphError):
        G.Graph(3, [(0, 1), (1, 0)])


def test_stats_and_degrees():
    g = G.petersen()
    assert (g.vertex_count, g.edge_count, g.max_degree) == (10, 15, 3)
    assert all(g.degree(v) == 3 for v in range(10))
    assert G.star(4).max_degree == 4


def test_girth_examples():
    assert G.girth(G.petersen()) == 5
    assert G.girth(G.complete(4)) == 3
    assert G.girth(G.hypercube(3)) == 4
    assert G.girth(G.path(6)) == G.ACYCLIC
    assert G.girth(G.subdivide(G.complete(4), 134)) == 405


@given(st.integers(3, 40))
def test_cycle_girth(n):
    assert G.girth(G.cycle(n)) == n


def test_cycle_counts():
    assert len(G.enumerate_cycles(G.petersen(), 10)) == 57
    assert len(G.enumerate_cycles(G.complete(4), 4)) == 7
    assert [len(c) for c in G.enumerate_cycles(G.complete(4), 3)] == [3] * 4


def test_cycle_cap():
    with pytest.raises(G.EnumerationCapError):
        G.enumerate_cycles(G.complete(7), 7, cap=10)


@settings(max_examples=60, deadline=None)
@given(small_graphs(6))
def test_cycles_match_brute_force(g):
    mine = {frozenset(c.edges) for c in G.enumerate_cycles(g, max(g.vertex_count, 3))}
    assert mine == brute_cycles(g, g.vertex_count)


@settings(max_examples=60, deadline=None)
@given(small_graphs(7))
def test_cycles_are_closed_and_simple(g):
    for c in G.enumerate_cycles(g, max(g.vertex_count, 3)):
        assert len(set(c.vertices)) == len(c.vertices) == len(c.edges)
        for i, e in enumerate(c.edges):
            assert set(g.edges[e]) == {c.vertices[i], c.vertices[(i + 1) % len(c)]}


def test_path_counts():
    assert len(G.enumerate_paths(G.path(5), 4)) == 1
    assert len(G.enumerate_paths(G.cycle(4), 3)) == 4
    assert len(G.enumerate_paths(G.complete(4), 3)) == 12


def test_special_pairs():
    assert G.special_pairs(G.cycle(4)) == [(0, 2), (1, 3)]
    assert G.special_pairs(G.cycle(6)) == []


def test_random_regular_is_regular_and_seeded():
    g = G.random_regular(50, 4, 7)
    assert all(g.degree(v) == 4 for v in range(50))
    assert g == G.random_regular(50, 4, 7)
    with pytest.raises(G.GraphError):
        G.random_regular(5, 3, 0)


def test_subdivide_keeps_originals_first():
    g = G.subdivide(G.complete(4), 2)
    assert g.vertex_count == 4 + 12 and g.edge_count == 18
    assert g.max_degree == 3 and G.girth(g) == 9


@settings(max_examples=60, deadline=None)
@given(small_graphs(8))
def test_dimacs_round_trip(g):
    assert G.parse_dimacs(G.write_dimacs(g, "round trip")) == g


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",
        "p edge 2 1\np edge 2 1\ne 1 2\n",
        "p edge 2 1\ne 1 3\n",
        "p edge 2 1\ne 1 1\n",
        "p edge 3 2\ne 1 2\ne 2 1\n",
        "p edge 3 2\ne 1 2\n",
        "p edge 2 1\nx 1 2\n",
        "p edge 2 1\ne 1 two\n",
        "",
    ],
)
def test_dimacs_errors(text):
    with pytest.raises(G.GraphError):
        G.parse_dimacs(text)


def test_generate_by_name():
    assert G.generate("random_regular", n=10, d=3, seed=1).edge_count == 15
    with pytest.raises(G.GraphError):
        G.generate("moebius")
