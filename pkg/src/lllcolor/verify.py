"""Direct checks of every coloring property, and a tiny exhaustive oracle.

These checks work from the definitions (color-pair subgraphs, neighborhood
color counts) and share no detection code with the solver.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .coloring import EDGES, Coloring, ColoringError, target_of
from .events import Kind
from .graph import DEFAULT_CAP, Graph, enumerate_cycles, enumerate_paths

BRUTE_FORCE_MAX_VARIABLES = 16
BRUTE_FORCE_MAX_COLORS = 8


class VerifyError(ValueError):
    """Coloring and variant do not fit together."""


@dataclass(frozen=True)
class Violation:
    kind: Kind
    witness: tuple[int, ...]
    description: str

    def sort_key(self):
        return (int(self.kind), self.witness)

    def to_dict(self) -> dict:
        return {"kind": self.kind.label, "witness": list(self.witness), "description": self.description}


def _assignment(g: Graph, coloring, variant: str) -> tuple[int, ...]:
    target = target_of(variant)
    if isinstance(coloring, Coloring):
        if coloring.target != target:
            raise VerifyError(f"{variant} colors {target}, got a coloring of {coloring.target}")
        colors = coloring.assignment
    else:
        colors = tuple(int(c) for c in coloring)
    expected = g.edge_count if target == EDGES else g.vertex_count
    if len(colors) != expected:
        raise VerifyError(f"{variant} needs {expected} colors, got {len(colors)}")
    return colors


def _first(candidates):
    return min(candidates, key=Violation.sort_key, default=None)


# -- shared helpers -----------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _has_cycle(pairs) -> bool:
    uf = _UnionFind()
    return any(not uf.union(a, b) for a, b in pairs)


def _find_cycle(adj: dict[int, list[tuple[int, int]]]):
    """Some cycle in a simple graph given as vertex -> [(neighbor, edge id)].

    Returns ``(vertices, edge_ids)`` or None. Depth-first with sorted
    neighbor order, so the result is deterministic.
    """
    state = {}
    for root in sorted(adj):
        if root in state:
            continue
        parent_edge = {root: None}
        parent = {root: None}
        stack = [(root, iter(sorted(adj[root])))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            step = next(it, None)
            if step is None:
                state[v] = 2
                stack.pop()
                continue
            w, e = step
            if e == parent_edge[v]:
                continue
            if state.get(w) == 1:
                verts, edges = [v], [e]
                x = v
                while x != w:
                    edges.append(parent_edge[x])
                    x = parent[x]
                    verts.append(x)
                return verts, edges
            if w not in state:
                state[w] = 1
                parent[w], parent_edge[w] = v, e
                stack.append((w, iter(sorted(adj[w]))))
    return None


def _edge_subgraph_adj(g: Graph, edge_ids):
    adj = defaultdict(list)
    for e in edge_ids:
        u, v = g.edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    return adj


def _edge_subgraph_cycles(g: Graph, edge_ids, cap):
    """All cycles inside the given edge set, as tuples of original edge ids in cycle order."""
    edge_ids = sorted(edge_ids)
    if not _has_cycle(g.edges[e] for e in edge_ids):
        return []
    sub = Graph(g.vertex_count, [g.edges[e] for e in edge_ids])
    return [tuple(edge_ids[i] for i in cyc.edges) for cyc in enumerate_cycles(sub, g.vertex_count, cap)]


# -- edge properties ----------------------------------------------------------


def _improper_edges(g: Graph, colors):
    found = []
    for v in range(g.vertex_count):
        by_color = defaultdict(list)
        for e in g.incident_edges(v):
            by_color[colors[e]].append(e)
        for c, es in by_color.items():
            if len(es) > 1:
                a, b = sorted(es)[:2]
                found.append(Violation(Kind.IMPROPER_PAIR, (a, b), f"edges {a} and {b} meet at vertex {v} with color {c}"))
    return _first(found)


def _classes(colors):
    classes = defaultdict(list)
    for i, c in enumerate(colors):
        classes[c].append(i)
    return classes


def _bichromatic_edge_cycle(g: Graph, colors):
    classes = _classes(colors)
    found = []
    for a, b in itertools.combinations(sorted(classes), 2):
        es = classes[a] + classes[b]
        if not _has_cycle(g.edges[e] for e in es):
            continue
        _, cyc = _find_cycle(_edge_subgraph_adj(g, es))
        found.append(Violation(Kind.EVEN_CYCLE_BICHROMATIC, tuple(sorted(cyc)), f"cycle on edges {sorted(cyc)} uses only colors {a} and {b}"))
    return _first(found)


def _crowded_star(g: Graph, colors, eta: int):
    found = []
    for v in range(g.vertex_count):
        by_color = defaultdict(list)
        for e in g.incident_edges(v):
            by_color[colors[e]].append(e)
        for c, es in by_color.items():
            if len(es) > eta:
                scope = tuple(sorted(es)[: eta + 1])
                found.append(Violation(Kind.ETA_STAR, scope, f"{len(es)} edges of color {c} at vertex {v} exceed {eta}"))
    return _first(found)


def _eta_stage_cycles(g: Graph, colors, cap):
    classes = _classes(colors)
    odd, even = [], []
    for c in sorted(classes):
        for cyc in _edge_subgraph_cycles(g, classes[c], cap):
            bucket = odd if len(cyc) % 2 else even
            kind = Kind.ODD_CYCLE_MONOCHROMATIC if len(cyc) % 2 else Kind.CYCLE_MONO_OR_BICHROMATIC
            bucket.append(Violation(kind, tuple(sorted(cyc)), f"cycle of length {len(cyc)} is monochromatic in color {c}"))
    if odd:
        return _first(odd)
    for a, b in itertools.combinations(sorted(classes), 2):
        for cyc in _edge_subgraph_cycles(g, classes[a] + classes[b], cap):
            if len(cyc) % 2:
                continue
            if all(colors[cyc[i]] == colors[cyc[i % 2]] for i in range(len(cyc))) and colors[cyc[0]] != colors[cyc[1]]:
                even.append(Violation(Kind.CYCLE_MONO_OR_BICHROMATIC, tuple(sorted(cyc)), f"cycle of length {len(cyc)} alternates colors {a} and {b}"))
    return _first(even)


# -- vertex properties --------------------------------------------------------


def _improper_vertices(g: Graph, colors):
    for u, v in sorted(g.edges):
        if colors[u] == colors[v]:
            return Violation(Kind.IMPROPER_PAIR, (u, v), f"adjacent vertices {u} and {v} share color {colors[u]}")
    return None


def _bichromatic_vertex_cycle(g: Graph, colors):
    classes = _classes(colors)
    found = []
    for a, b in itertools.combinations(sorted(classes), 2):
        members = set(classes[a]) | set(classes[b])
        adj = {v: [(w, g.edge_id(v, w)) for w in g.neighbors(v) if w in members] for v in members}
        hit = _find_cycle(adj)
        if hit is not None:
            verts = tuple(sorted(hit[0]))
            found.append(Violation(Kind.EVEN_CYCLE_BICHROMATIC, verts, f"cycle through vertices {list(hit[0])} uses only colors {a} and {b}"))
    return _first(found)


def _bichromatic_p4(g: Graph, colors):
    best = None
    for v2, v3 in g.edges:
        for x, y in ((v2, v3), (v3, v2)):
            left = [w for w in g.neighbors(x) if w != y and colors[w] == colors[y]]
            right = [w for w in g.neighbors(y) if w != x and colors[w] == colors[x]]
            for w1, w4 in itertools.product(left, right):
                if w1 == w4:
                    continue
                scope = tuple(sorted((w1, x, y, w4)))
                if best is None or scope < best[0]:
                    best = (scope, (w1, x, y, w4))
    if best is None:
        return None
    return Violation(Kind.PATH3, best[0], f"path {list(best[1])} uses only colors {colors[best[1][0]]} and {colors[best[1][1]]}")


def _crowded_neighborhood(g: Graph, colors, beta: int):
    found = []
    for u in range(g.vertex_count):
        by_color = defaultdict(list)
        for w in g.neighbors(u):
            by_color[colors[w]].append(w)
        for c, ws in by_color.items():
            if len(ws) > beta:
                scope = tuple(sorted(ws)[: beta + 1])
                found.append(Violation(Kind.FRUGAL_SET, scope, f"{len(ws)} neighbors of vertex {u} have color {c}, more than {beta}"))
    return _first(found)


def verify(g: Graph, coloring, variant: str, eta: int = 2, beta: int = 2, cap: int = DEFAULT_CAP) -> Violation | None:
    """Return None when the coloring has the property, else the first violation.

    Violations are ordered by kind, then by sorted witness.
    """
    colors = _assignment(g, coloring, variant)
    if variant in ("proper-edge", "acyclic-edge", "delta-plus-2"):
        v = _improper_edges(g, colors)
        if v is None and variant != "proper-edge":
            v = _bichromatic_edge_cycle(g, colors)
        return v
    if variant == "eta-stage":
        if eta < 1:
            raise VerifyError("eta must be positive")
        return _crowded_star(g, colors, eta) or _eta_stage_cycles(g, colors, cap)
    v = _improper_vertices(g, colors)
    if v is not None or variant == "proper-vertex":
        return v
    if variant == "acyclic-vertex":
        return _bichromatic_vertex_cycle(g, colors)
    if variant == "star":
        return _bichromatic_p4(g, colors)
    if variant == "frugal":
        if beta < 1:
            raise VerifyError("beta must be positive")
        return _crowded_neighborhood(g, colors, beta)
    raise ColoringError(f"unknown variant {variant!r}")


# -- exhaustive oracle --------------------------------------------------------


def _constraints(g: Graph, variant: str, eta: int, beta: int):
    """Forbidden patterns as (groups, distinct): every group monochromatic,
    and if ``distinct`` the first two groups differ."""
    out = []
    n = g.vertex_count
    if target_of(variant) == EDGES:
        if variant == "eta-stage":
            for v in range(n):
                for star in itertools.combinations(g.incident_edges(v), eta + 1):
                    out.append(((tuple(star),), False))
        else:
            for v in range(n):
                for a, b in itertools.combinations(g.incident_edges(v), 2):
                    out.append((((a, b),), False))
        if variant in ("acyclic-edge", "delta-plus-2"):
            for cyc in enumerate_cycles(g, n):
                if len(cyc) % 2 == 0:
                    out.append(((cyc.edges[0::2], cyc.edges[1::2]), True))
        elif variant == "eta-stage":
            for cyc in enumerate_cycles(g, n):
                groups = (cyc.edges,) if len(cyc) % 2 else (cyc.edges[0::2], cyc.edges[1::2])
                out.append((groups, False))
        return out
    out = [(((u, v),), False) for u, v in g.edges]
    if variant == "acyclic-vertex":
        for cyc in enumerate_cycles(g, n):
            if len(cyc) % 2 == 0:
                out.append(((cyc.vertices[0::2], cyc.vertices[1::2]), True))
    elif variant == "star":
        for p in enumerate_paths(g, 3):
            out.append((((p[0], p[2]), (p[1], p[3])), False))
    elif variant == "frugal":
        for u in range(n):
            for s in itertools.combinations(g.neighbors(u), beta + 1):
                out.append(((s,), False))
    return out


def brute_force_chromatic(g: Graph, variant: str, max_colors: int = BRUTE_FORCE_MAX_COLORS, eta: int = 2, beta: int = 2) -> int | None:
    """Fewest colors admitting a valid coloring, or None if more than ``max_colors`` are needed.

    Backtracking over variables in index order; a new color may only be the
    next unused one, which removes palette permutations.
    """
    count = g.edge_count if target_of(variant) == EDGES else g.vertex_count
    if count > BRUTE_FORCE_MAX_VARIABLES:
        raise VerifyError(f"{count} variables exceed the brute-force cap of {BRUTE_FORCE_MAX_VARIABLES}")
    if max_colors > BRUTE_FORCE_MAX_COLORS:
        raise VerifyError(f"max_colors {max_colors} exceeds {BRUTE_FORCE_MAX_COLORS}")
    if count == 0:
        return 0
    due = defaultdict(list)
    for groups, distinct in _constraints(g, variant, eta, beta):
        last = max(itertools.chain.from_iterable(groups))
        due[last].append((groups, distinct))

    def bad(colors, groups, distinct):
        for grp in groups:
            c0 = colors[grp[0]]
            if any(colors[x] != c0 for x in grp):
                return False
        return not distinct or colors[groups[0][0]] != colors[groups[1][0]]

    def search(colors, i, used, palette):
        if i == count:
            return True
        for c in range(min(used + 1, palette)):
            colors[i] = c
            if not any(bad(colors, grp, d) for grp, d in due[i]):
                if search(colors, i + 1, max(used, c + 1), palette):
                    return True
        colors[i] = -1
        return False

    for palette in range(1, max_colors + 1):
        if search([-1] * count, 0, 0, palette):
            return palette
    return None
