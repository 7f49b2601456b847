import itertools
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lllcolor import events as E
from lllcolor import graph as G
from lllcolor import lll
from lllcolor.solver import vizing_proper_edge_coloring

K = E.Kind


def kinds(fam):
    return Counter(e.kind for e in fam.events)


def test_acyclic_edge_c4():
    fam = E.build_acyclic_edge(G.cycle(4), 3)
    assert kinds(fam) == {K.ADJACENT_EDGE_PAIR: 4, K.EVEN_CYCLE_BICHROMATIC: 1}
    assert [e.probability for e in fam.events] == [Fraction(1, 3)] * 4 + [Fraction(1, 9)]


def test_acyclic_edge_tree_and_k4():
    assert set(kinds(E.build_acyclic_edge(G.path(6), 5))) == {K.ADJACENT_EDGE_PAIR}
    fam = E.build_acyclic_edge(G.complete(4), 29)
    assert fam.count_profile()[(K.ADJACENT_EDGE_PAIR, 2)] <= 4


def test_girth_variant():
    fam = E.build_girth_variant(G.cycle(5), 13, 2)
    assert kinds(fam) == {K.ODD_CYCLE_MONOCHROMATIC: 1}
    assert fam.events[0].probability == Fraction(1, 13**4)
    fam = E.build_girth_variant(G.petersen(), 7, 2)
    assert fam.count_profile()[(K.ETA_STAR, 3)] <= 2
    even = [e for e in fam.events if e.kind is K.CYCLE_MONO_OR_BICHROMATIC]
    assert all(e.probability == Fraction(7**2, 7 ** len(e.scope)) for e in even)
    with pytest.raises(E.EventError):
        E.build_girth_variant(G.complete(4), 7, 2)


def test_delta_plus_2_examples():
    fam = E.build_delta_plus_2(G.cycle(6), [0, 1, 0, 1, 0, 1], 0.3)
    assert kinds(fam)[K.BASE_BICHROMATIC_CYCLE] == 1
    fam = E.build_delta_plus_2(G.cycle(6), [0, 1, 0, 1, 0, 2], 0.3)
    assert kinds(fam)[K.HALF_MONO_CYCLE] == 1
    half = next(e for e in fam.events if e.kind is K.HALF_MONO_CYCLE)
    assert half.probability == pytest.approx(0.3**3 * 0.7**3)
    with pytest.raises(E.EventError):
        E.build_delta_plus_2(G.cycle(6), [0, 0, 1, 0, 1, 2], 0.3)
    with pytest.raises(E.EventError):
        E.build_delta_plus_2(G.cycle(6), [0, 1, 0, 1, 0, 1], 0.6)


def test_recolor_probability_bound_example():
    w, k = 0.3, 2
    lhs = (1 - w) ** (2 * k) + 2 * w**k * (1 - w) ** k
    assert lhs == pytest.approx(0.3283) and lhs <= (1 + w) ** (-2 * k)
    fam = E.build_delta_plus_2(G.cycle(4), [0, 1, 0, 1], w)
    cyc = next(e for e in fam.events if e.kind is K.BASE_BICHROMATIC_CYCLE)
    assert cyc.probability == pytest.approx(lhs)


def test_acyclic_vertex_examples():
    fam = E.build_acyclic_vertex(G.cycle(4), 5)
    assert kinds(fam) == {K.VERTEX_EDGE: 4, K.SPECIAL_PAIR: 2}
    assert kinds(E.build_acyclic_vertex(G.path(5), 5))[K.PATH4] == 1
    fam = E.build_acyclic_vertex(G.random_regular(20, 3, 1), 39)
    assert max(n for (k, _), n in fam.count_profile().items() if k is K.PATH4) <= 2.5 * 81


def test_star_examples():
    assert kinds(E.build_star(G.path(4), 5)) == {K.VERTEX_EDGE: 3, K.PATH3: 1}
    fam = E.build_star(G.cycle(4), 5)
    paths = [e for e in fam.events if e.kind is K.PATH3]
    assert len(paths) == 4 and all(e.probability == Fraction(1, 25) for e in paths)


def test_frugal_examples():
    assert kinds(E.build_frugal(G.star(3), 5, 2)) == {K.VERTEX_EDGE: 3, K.FRUGAL_SET: 1}
    assert kinds(E.build_frugal(G.complete(4), 5, 2))[K.FRUGAL_SET] == 4
    assert kinds(E.build_frugal(G.star(4), 5, 2))[K.FRUGAL_SET] == 4
    with pytest.raises(E.EventError):
        E.build_frugal(G.star(4), 5, 1)


def test_cap_error():
    with pytest.raises(G.EnumerationCapError):
        E.build_acyclic_edge(G.complete(7), 30, cap=5)


def test_labels():
    assert K.INDUCED_C4.label == "InducedC4"
    assert K.CYCLE_MONO_OR_BICHROMATIC.label == "CycleMonoOrBichromatic"


def test_event_vectorized_matches_scalar():
    ev = E.Event(K.EVEN_CYCLE_BICHROMATIC, ((0, 2), (1, 3)), Fraction(1, 9), distinct=True)
    rows = np.array([[0, 1, 0, 1], [0, 0, 0, 0], [2, 1, 2, 0]])
    assert list(ev.occurs(rows)) == [bool(ev.occurs(r)) for r in rows] == [True, False, False]


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 7))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.Graph(n, [p for p, k in zip(pairs, keep) if k])


def _families(g):
    fams = [
        E.build_acyclic_edge(g, 12),
        E.build_acyclic_vertex(g, 12),
        E.build_star(g, 12),
        E.build_frugal(g, 12, 2),
    ]
    if g.edge_count:
        fams.append(E.build_delta_plus_2(g, vizing_proper_edge_coloring(g).assignment, 0.2))
    gl = G.girth(g)
    if gl == G.ACYCLIC or gl >= 5:
        fams.append(E.build_girth_variant(g, 12, 2))
    return fams


SIZES = {
    K.ADJACENT_EDGE_PAIR: 2,
    K.VERTEX_EDGE: 2,
    K.SPECIAL_PAIR: 2,
    K.PATH4: 5,
    K.PATH3: 4,
    K.INDUCED_C4: 4,
    K.ETA_STAR: 3,
    K.FRUGAL_SET: 3,
}


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_family_invariants(g):
    for fam in _families(g):
        dep = fam.dependency_graph(validate=True)
        for i, e in enumerate(fam.events):
            assert 0 < float(e.probability) <= 1
            assert e.scope
            if e.kind in SIZES:
                assert len(e.scope) == SIZES[e.kind]
            for j in range(len(fam.events)):
                if i != j:
                    assert (j in dep.neighbors[i]) == bool(set(e.scope) & set(fam.events[j].scope))
        for audit in E.audit_counts(fam, g):
            assert audit.ok, (fam.variant, audit)


def test_family_json_export():
    fam = E.build_star(G.cycle(5), 28)
    dep = fam.dependency_graph()
    back = lll.from_json_dict(lll.to_json_dict(dep))
    assert back.neighbors == dep.neighbors
    assert lll.check_condition(back).passed
