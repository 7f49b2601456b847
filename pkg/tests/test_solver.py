import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lllcolor import graph as G
from lllcolor import solver as S
from lllcolor.coloring import Coloring
from lllcolor.verify import verify


def test_c4_acyclic_edge_three_colors():
    for seed in range(10):
        r = S.resample_solve(G.cycle(4), "acyclic-edge", 3, seed=seed)
        assert r.success and r.valid


def test_tree_needs_no_cycle_resamples():
    g = G.subdivide(G.star(4), 1)
    trace = []
    r = S.resample_solve(g, "acyclic-edge", 2 * g.max_degree - 1, seed=1, trace=trace)
    assert r.valid
    assert all(kind.name == "ADJACENT_EDGE_PAIR" for kind, _ in trace)


def test_determinism():
    g = G.random_regular(30, 4, 3)
    a = S.resample_solve(g, "acyclic-edge", 12, seed=5)
    b = S.resample_solve(g, "acyclic-edge", 12, seed=5)
    assert a.to_json() == b.to_json()
    c = S.resample_solve(g, "acyclic-edge", 12, seed=6)
    assert c.coloring != a.coloring


@pytest.mark.parametrize(
    "variant,colors,kw",
    [
        ("acyclic-edge", 9, {}),
        ("eta-stage", 5, {"eta": 2}),
        ("acyclic-vertex", 8, {}),
        ("star", 10, {}),
        ("frugal", 7, {"beta": 2}),
        ("proper-edge", 4, {}),
        ("proper-vertex", 4, {}),
    ],
)
def test_resampling_touches_only_the_scope(variant, colors, kw):
    g = G.petersen()
    trace = []
    report = S.resample_solve(g, variant, colors, seed=3, trace=trace, max_resamples=2000, **kw)
    assert report.success and report.valid
    # replay the run and check that each step changes nothing outside its scope
    rng = np.random.default_rng(3)
    count = g.edge_count if report.coloring.target == "edges" else g.vertex_count
    current = [int(c) for c in rng.integers(0, colors, size=count)]
    for kind, scope in trace:
        hit = S.find_violation(g, variant, current, **kw)
        assert hit == (kind, scope)
        before = list(current)
        for v, c in zip(scope, rng.integers(0, colors, size=len(scope))):
            current[v] = int(c)
        assert all(before[i] == current[i] for i in range(count) if i not in scope)
    assert tuple(current) == report.coloring.assignment


def test_budget_exhaustion_is_reported():
    r = S.resample_solve(G.complete(5), "proper-vertex", 3, seed=0, max_resamples=50)
    assert not r.success and not r.valid and r.resamples == 50


def test_invalid_parameters():
    with pytest.raises(S.SolverError):
        S.resample_solve(G.cycle(4), "rainbow", 3)
    with pytest.raises(S.SolverError):
        S.resample_solve(G.cycle(4), "star", 0)


def test_report_json_field_order():
    r = S.resample_solve(G.cycle(5), "frugal", 4, seed=2, beta=2)
    data = json.loads(r.to_json())
    assert list(data) == ["variant", "n", "m", "colors", "assignment", "seed", "resamples", "valid", "beta"]


def test_more_colors_never_hurt_much():
    g = G.petersen()
    rates = []
    for n in range(4, 9):
        rates.append(sum(S.resample_solve(g, "acyclic-edge", n, seed=s, max_resamples=150).success for s in range(20)))
    inversions = sum(1 for a, b in zip(rates, rates[1:]) if b < a)
    assert inversions <= 1


@pytest.mark.parametrize("g,colors", [(G.cycle(5), 3), (G.cycle(6), 2), (G.complete(4), 3)])
def test_vizing_examples(g, colors):
    c = S.vizing_proper_edge_coloring(g)
    assert c.palette == colors and verify(g, c, "proper-edge") is None


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 30), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_vizing_uses_at_most_delta_plus_one(n, p, seed):
    g = G.gnp(n, p, seed)
    c = S.vizing_proper_edge_coloring(g)
    assert verify(g, c, "proper-edge") is None
    assert c.palette <= g.max_degree + 1


def test_expand_path():
    g = G.path(4)
    out = S.expand_eta_coloring(g, Coloring("edges", [0, 0, 0], 1), 2)
    assert out.palette == 2 and verify(g, out, "proper-edge") is None


def test_expand_proper_is_renaming():
    g = G.cycle(6)
    c = Coloring("edges", [0, 1, 2, 0, 1, 2], 3)
    assert S.expand_eta_coloring(g, c, 1) == c


def test_expand_rejects_bad_input():
    with pytest.raises(S.SolverError):
        S.expand_eta_coloring(G.cycle(5), Coloring("edges", [0] * 5, 1), 2)


def test_petersen_pipeline():
    g = G.petersen()
    r = S.resample_solve(g, "eta-stage", 7, seed=0, eta=2)
    out = S.expand_eta_coloring(g, r.coloring, 2)
    assert r.valid and verify(g, out, "acyclic-edge") is None and out.palette == 14


def test_delta_plus_2_small_cases():
    tree = G.subdivide(G.star(3), 2)
    r = S.recolor_delta_plus_2(tree, seed=0)
    assert r.valid and r.resamples == 0
    r = S.recolor_delta_plus_2(G.cycle(6), seed=0)
    assert r.valid and r.coloring.palette == 4


def test_delta_plus_2_high_girth():
    g = G.subdivide(G.complete(4), 134)
    for seed in range(3):
        r = S.recolor_delta_plus_2(g, seed=seed)
        assert r.valid and r.coloring.used <= 5
