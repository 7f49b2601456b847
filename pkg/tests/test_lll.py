import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lllcolor import lll


def clique(n, p, mu=1.0):
    edges = list(itertools.combinations(range(n), 2))
    return lll.DependencyGraph.from_edges([p] * n, [mu] * n, edges, {i: [tuple(range(n))] for i in range(n)})


def brute_independence(dep, members, mu):
    members = sorted(members)
    total = 0.0
    for r in range(len(members) + 1):
        for subset in itertools.combinations(members, r):
            if all(b not in dep.neighbors[a] for a, b in itertools.combinations(subset, 2)):
                total += math.prod(mu[x] for x in subset)
    return total


@st.composite
def dependency_graphs(draw, max_events=9):
    n = draw(st.integers(1, max_events))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    mu = draw(st.lists(st.floats(0, 3), min_size=n, max_size=n))
    p = draw(st.lists(st.floats(0, 0.5), min_size=n, max_size=n))
    return lll.DependencyGraph.from_edges(p, mu, [e for e, k in zip(pairs, keep) if k])


def test_four_clique_improved_only():
    dep = clique(4, 0.2)
    assert lll.phi_star_exact(dep, 0) == pytest.approx(5.0)
    assert lll.check_condition(dep, lll.IMPROVED_EXACT).passed
    assert lll.check_condition(dep, lll.IMPROVED_CLIQUE).passed
    best, report = lll.uniform_mu_scan(dep, lll.CLASSIC)
    assert not report.passed
    assert max(e.bound for e in report.events) == pytest.approx(27 / 256, rel=1e-3)


def test_path_center_normalizers():
    dep = lll.DependencyGraph.from_edges([0.1] * 3, [1.0] * 3, [(0, 1), (1, 2)])
    assert lll.phi_star_exact(dep, 1) == 5.0
    assert lll.phi_star_clique_bound(dep, 1, cover=[(0, 1), (1, 2)]) == 9.0
    assert lll.phi_classic(dep, 1) == 8.0


def test_isolated_event():
    dep = lll.DependencyGraph.from_edges([0.5], [1.0], [], {0: [(0,)]})
    assert lll.phi_star_exact(dep, 0) == 2.0
    assert lll.check_condition(dep, lll.IMPROVED_CLIQUE).passed


@pytest.mark.parametrize(
    "edges,cliques",
    [
        ([(0, 0)], None),
        ([(0, 5)], None),
        ([(0, 1)], {0: [(0, 2)]}),
        ([(0, 1), (1, 2)], {1: [(0, 1, 2)]}),
        ([(0, 1), (1, 2)], {1: [(0, 1)]}),
    ],
)
def test_malformed_graphs(edges, cliques):
    with pytest.raises(lll.DependencyGraphError):
        lll.DependencyGraph.from_edges([0.1] * 3, [1.0] * 3, edges, cliques)


def test_exact_cap():
    dep = lll.DependencyGraph.from_edges([0.01] * 30, [0.1] * 30, [(0, i) for i in range(1, 30)])
    with pytest.raises(lll.ExactCapError):
        lll.phi_star_exact(dep, 0)


def test_missing_cover():
    dep = lll.DependencyGraph.from_edges([0.1] * 2, [1.0] * 2, [(0, 1)])
    with pytest.raises(lll.DependencyGraphError):
        lll.check_condition(dep, lll.IMPROVED_CLIQUE)


def test_json_round_trip():
    dep = clique(3, 0.1, 0.5)
    text = json.dumps(lll.to_json_dict(dep))
    back = lll.loads(text)
    assert back.p == dep.p and back.mu == dep.mu and back.neighbors == dep.neighbors and back.cliques == dep.cliques
    with pytest.raises(lll.DependencyGraphError):
        lll.loads("{")
    with pytest.raises(lll.DependencyGraphError):
        lll.loads('{"edges": []}')


@settings(max_examples=150, deadline=None)
@given(dependency_graphs())
def test_independence_polynomial_matches_brute_force(dep):
    for x in range(len(dep)):
        star = dep.closed_neighborhood(x)
        assert lll.phi_star_exact(dep, x) == pytest.approx(brute_independence(dep, star, dep.mu), rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(dependency_graphs())
def test_normalizer_ordering(dep):
    for x in range(len(dep)):
        cover = lll.greedy_clique_cover(dep, x)
        exact = lll.phi_star_exact(dep, x)
        assert exact <= lll.phi_star_clique_bound(dep, x, cover=cover) * (1 + 1e-12)
        assert exact <= lll.phi_classic(dep, x) * (1 + 1e-12)


@settings(max_examples=150, deadline=None)
@given(dependency_graphs())
def test_classic_pass_implies_improved_pass(dep):
    if lll.check_condition(dep, lll.CLASSIC).passed:
        assert lll.check_condition(dep, lll.IMPROVED_EXACT).passed


@given(st.integers(1, 8), st.floats(0, 3))
def test_polynomial_closed_forms(n, mu):
    empty = lll.DependencyGraph.from_edges([0.0] * n, [mu] * n, [])
    assert lll.independence_polynomial(empty, range(n)) == pytest.approx((1 + mu) ** n)
    full = clique(n, 0.0, mu)
    assert lll.independence_polynomial(full, range(n)) == pytest.approx(1 + n * mu)


@settings(max_examples=80, deadline=None)
@given(dependency_graphs())
def test_greedy_cover_is_valid(dep):
    for x in range(len(dep)):
        cover = lll.greedy_clique_cover(dep, x)
        dep.validate_cover(x, cover)
        assert all(x in c for c in cover)
