"""Resampling solvers and the two composite edge-coloring procedures.

Each solver scans for a violated bad event (lowest kind first, then the
lexicographically smallest sorted scope) and redraws only that event's
variables. Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64);
a redraw consumes one draw per scope variable in increasing index order.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .coloring import EDGES, Coloring, target_of
from .events import Kind
from .graph import DEFAULT_CAP, Graph, enumerate_cycles, special_pairs
from .verify import verify

DEFAULT_MAX_RESAMPLES = 10**6
SOLVER_VARIANTS = ("proper-edge", "acyclic-edge", "eta-stage", "proper-vertex", "acyclic-vertex", "star", "frugal")


class SolverError(ValueError):
    """Invalid solver parameters or failed preconditions."""


@dataclass
class SolveReport:
    variant: str
    n: int
    m: int
    coloring: Coloring
    seed: int
    resamples: int
    success: bool
    valid: bool
    params: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def colors(self) -> int:
        return self.coloring.palette

    def to_dict(self) -> dict:
        out = {
            "variant": self.variant,
            "n": self.n,
            "m": self.m,
            "colors": self.colors,
            "assignment": list(self.coloring.assignment),
            "seed": self.seed,
            "resamples": self.resamples,
            "valid": self.valid,
        }
        for key in sorted(self.params):
            value = self.params[key]
            out[key] = float(f"{value:.10g}") if isinstance(value, float) else value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))


# -- violation scanners ---------------------------------------------------------
# Each returns (kind, scope) for the first violated event, or None.


def _smallest(cands):
    return min(cands, default=None)


def _edge_pairs(g: Graph, colors):
    best = None
    for v in range(g.vertex_count):
        seen = {}
        for e in g.incident_edges(v):
            c = colors[e]
            if c in seen:
                pair = (min(seen[c], e), max(seen[c], e))
                if best is None or pair < best:
                    best = pair
            else:
                seen[c] = e
    return None if best is None else (Kind.ADJACENT_EDGE_PAIR, best)


def _pair_cycles(g: Graph, colors, cap):
    """Cycles alternating between two distinct colors, by color pair."""
    classes = defaultdict(list)
    for e, c in enumerate(colors):
        classes[c].append(e)
    for a, b in itertools.combinations(sorted(classes), 2):
        es = sorted(classes[a] + classes[b])
        parent = {}

        def root(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        cyclic = False
        for e in es:
            u, v = g.edges[e]
            ru, rv = root(u), root(v)
            if ru == rv:
                cyclic = True
                break
            parent[ru] = rv
        if not cyclic:
            continue
        sub = Graph(g.vertex_count, [g.edges[e] for e in es])
        for cyc in enumerate_cycles(sub, g.vertex_count, cap):
            ids = [es[i] for i in cyc.edges]
            if len(ids) % 2 == 0 and all(colors[ids[i]] == colors[ids[i % 2]] for i in range(len(ids))):
                yield a, b, ids


def _alternating_components(g: Graph, colors):
    """Cycles alternating two colors in a proper edge coloring.

    Every two-color subgraph of a proper coloring has maximum degree 2, so
    its cycles are exactly its closed components.
    """
    at = [dict() for _ in range(g.vertex_count)]
    for e, (u, v) in enumerate(g.edges):
        at[u][colors[e]] = e
        at[v][colors[e]] = e
    seen = set()
    for e0 in range(g.edge_count):
        a = colors[e0]
        u0, v = g.edges[e0]
        for b in sorted(at[v]):
            if b == a or (e0, b) in seen:
                continue
            cycle, cur, e, want = [e0], v, e0, b
            while True:
                nxt = at[cur].get(want)
                if nxt is None or nxt == e0:
                    break
                cycle.append(nxt)
                x, y = g.edges[nxt]
                cur = y if x == cur else x
                want = a if want == b else b
            for f in cycle:
                seen.add((f, b if colors[f] == a else a))
            if nxt == e0 and len(cycle) % 2 == 0:
                yield tuple(sorted(cycle))


def _bichromatic_edge_cycle(g: Graph, colors, cap):
    best = _smallest(_alternating_components(g, colors))
    return None if best is None else (Kind.EVEN_CYCLE_BICHROMATIC, best)


def _scan_acyclic_edge(g, colors, cap, **_):
    return _edge_pairs(g, colors) or _bichromatic_edge_cycle(g, colors, cap)


def _scan_proper_edge(g, colors, cap, **_):
    return _edge_pairs(g, colors)


def _scan_eta_stage(g, colors, cap, eta, **_):
    stars = []
    for v in range(g.vertex_count):
        groups = defaultdict(list)
        for e in g.incident_edges(v):
            groups[colors[e]].append(e)
        for es in groups.values():
            if len(es) > eta:
                stars.append(tuple(sorted(es)[: eta + 1]))
    if stars:
        return Kind.ETA_STAR, min(stars)
    classes = defaultdict(list)
    for e, c in enumerate(colors):
        classes[c].append(e)
    odd, even = [], []
    for c in sorted(classes):
        es = classes[c]
        sub = Graph(g.vertex_count, [g.edges[e] for e in es])
        for cyc in enumerate_cycles(sub, max(g.vertex_count, 3), cap):
            scope = tuple(sorted(es[i] for i in cyc.edges))
            (odd if len(scope) % 2 else even).append(scope)
    if odd:
        return Kind.ODD_CYCLE_MONOCHROMATIC, min(odd)
    even.extend(tuple(sorted(ids)) for _, _, ids in _pair_cycles(g, colors, cap))
    return (Kind.CYCLE_MONO_OR_BICHROMATIC, min(even)) if even else None


def _vertex_edges(g: Graph, colors):
    for u, v in sorted(g.edges):
        if colors[u] == colors[v]:
            return Kind.VERTEX_EDGE, (u, v)
    return None


def _scan_proper_vertex(g, colors, cap, **_):
    return _vertex_edges(g, colors)


def _scan_acyclic_vertex(g, colors, cap, special, **_):
    hit = _vertex_edges(g, colors)
    if hit:
        return hit
    for u, v in special:
        if colors[u] == colors[v]:
            return Kind.SPECIAL_PAIR, (u, v)
    paths = []
    for mid in range(g.vertex_count):
        a = colors[mid]
        inner = [w for w in g.neighbors(mid) if colors[w] != a]
        for v1, v3 in itertools.permutations(inner, 2):
            if colors[v1] != colors[v3]:
                continue
            ends0 = [w for w in g.neighbors(v1) if w != mid and colors[w] == a]
            ends4 = [w for w in g.neighbors(v3) if w != mid and colors[w] == a]
            for v0, v4 in itertools.product(ends0, ends4):
                if v0 != v4:
                    paths.append(tuple(sorted((v0, v1, mid, v3, v4))))
    if paths:
        return Kind.PATH4, min(paths)
    squares = []
    special_set = set(special)
    for v1 in range(g.vertex_count):
        for v2, v4 in itertools.combinations(g.neighbors(v1), 2):
            if colors[v2] != colors[v4] or g.has_edge(v2, v4):
                continue
            for v3 in g.neighbors(v2):
                if v3 <= v1 or colors[v3] != colors[v1] or not g.has_edge(v3, v4) or g.has_edge(v1, v3):
                    continue
                if (v1, v3) in special_set or (min(v2, v4), max(v2, v4)) in special_set:
                    continue
                squares.append(tuple(sorted((v1, v2, v3, v4))))
    return (Kind.INDUCED_C4, min(squares)) if squares else None


def _scan_star(g, colors, cap, **_):
    hit = _vertex_edges(g, colors)
    if hit:
        return hit
    paths = []
    for x, y in g.edges:
        for v2, v3 in ((x, y), (y, x)):
            left = [w for w in g.neighbors(v2) if w != v3 and colors[w] == colors[v3]]
            right = [w for w in g.neighbors(v3) if w != v2 and colors[w] == colors[v2]]
            for v1, v4 in itertools.product(left, right):
                if v1 != v4:
                    paths.append(tuple(sorted((v1, v2, v3, v4))))
    return (Kind.PATH3, min(paths)) if paths else None


def _scan_frugal(g, colors, cap, beta, **_):
    hit = _vertex_edges(g, colors)
    if hit:
        return hit
    sets = []
    for u in range(g.vertex_count):
        groups = defaultdict(list)
        for w in g.neighbors(u):
            groups[colors[w]].append(w)
        for ws in groups.values():
            if len(ws) > beta:
                sets.append(tuple(sorted(ws)[: beta + 1]))
    return (Kind.FRUGAL_SET, min(sets)) if sets else None


_SCANNERS = {
    "proper-edge": _scan_proper_edge,
    "acyclic-edge": _scan_acyclic_edge,
    "eta-stage": _scan_eta_stage,
    "proper-vertex": _scan_proper_vertex,
    "acyclic-vertex": _scan_acyclic_vertex,
    "star": _scan_star,
    "frugal": _scan_frugal,
}


def find_violation(g: Graph, variant: str, colors, eta: int = 2, beta: int = 2, cap: int = DEFAULT_CAP):
    """First violated event of the variant's family as ``(kind, scope)``, or None."""
    special = special_pairs(g) if variant == "acyclic-vertex" else ()
    return _SCANNERS[variant](g, list(colors), cap, eta=eta, beta=beta, special=special)


def resample_solve(
    g: Graph,
    variant: str,
    colors: int,
    *,
    seed: int = 0,
    max_resamples: int = DEFAULT_MAX_RESAMPLES,
    eta: int = 2,
    beta: int = 2,
    cap: int = DEFAULT_CAP,
    trace: list | None = None,
) -> SolveReport:
    """Moser-Tardos resampling with ``colors`` colors.

    ``trace``, if given, receives one ``(kind, scope)`` entry per resample.
    Running out of resamples is reported, not raised.
    """
    if variant not in _SCANNERS:
        raise SolverError(f"unknown variant {variant!r}; expected one of {SOLVER_VARIANTS}")
    if colors < 1:
        raise SolverError("need at least one color")
    if variant == "eta-stage" and eta < 1:
        raise SolverError("eta must be positive")
    if variant == "frugal" and beta < 1:
        raise SolverError("beta must be positive")
    if max_resamples < 0:
        raise SolverError("max_resamples must be non-negative")
    start = time.perf_counter()
    target = target_of(variant)
    count = g.edge_count if target == EDGES else g.vertex_count
    special = special_pairs(g) if variant == "acyclic-vertex" else ()
    scan = _SCANNERS[variant]
    rng = np.random.default_rng(seed)
    assignment = [int(c) for c in rng.integers(0, colors, size=count)]
    resamples = 0
    success = False
    while True:
        hit = scan(g, assignment, cap, eta=eta, beta=beta, special=special)
        if hit is None:
            success = True
            break
        if resamples >= max_resamples:
            break
        kind, scope = hit
        for v, c in zip(scope, rng.integers(0, colors, size=len(scope))):
            assignment[v] = int(c)
        resamples += 1
        if trace is not None:
            trace.append((kind, scope))
    coloring = Coloring(target, assignment, colors)
    valid = success and verify(g, coloring, variant, eta=eta, beta=beta, cap=cap) is None
    params = {"eta": eta} if variant == "eta-stage" else {"beta": beta} if variant == "frugal" else {}
    return SolveReport(variant, g.vertex_count, g.edge_count, coloring, seed, resamples, success, valid, params, time.perf_counter() - start)


# -- Vizing ---------------------------------------------------------------------


def vizing_proper_edge_coloring(g: Graph) -> Coloring:
    """Proper edge coloring with at most Delta+1 colors.

    Each edge takes the smallest color free at both ends when one exists;
    otherwise a Misra-Gries fan rotation makes room.
    """
    delta = g.max_degree
    palette = delta + 1
    color = [-1] * g.edge_count
    at = [dict() for _ in range(g.vertex_count)]  # vertex -> color -> neighbor

    def free(v):
        return next(c for c in range(palette) if c not in at[v])

    def is_free(v, c):
        return c not in at[v]

    def set_color(u, v, c):
        e = g.edge_id(u, v)
        old = color[e]
        if old >= 0:
            del at[u][old]
            del at[v][old]
        color[e] = c
        if c >= 0:
            at[u][c] = v
            at[v][c] = u

    def edge_color(u, v):
        return color[g.edge_id(u, v)]

    for e, (x, y) in enumerate(g.edges):
        common = next((c for c in range(palette) if is_free(x, c) and is_free(y, c)), None)
        if common is not None:
            set_color(x, y, common)
            continue
        u = x
        fan = [y]
        used = {y}
        while True:
            last = fan[-1]
            nxt = None
            for w in g.neighbors(u):
                if w not in used and edge_color(u, w) >= 0 and is_free(last, edge_color(u, w)):
                    nxt = w
                    break
            if nxt is None:
                break
            fan.append(nxt)
            used.add(nxt)
        c = free(u)
        d = free(fan[-1])
        if c != d:
            # invert the c/d path starting at u (u has no c edge, so it begins with d)
            path = []
            v, want = u, d
            while want in at[v]:
                w = at[v][want]
                path.append((v, w, want))
                v, want = w, (c if want == d else d)
            for a, b, _ in path:
                set_color(a, b, -1)
            for a, b, col in path:
                set_color(a, b, c if col == d else d)
        k = None
        for i, w in enumerate(fan):
            if not is_free(w, d):
                continue
            if all(edge_color(u, fan[j + 1]) >= 0 and is_free(fan[j], edge_color(u, fan[j + 1])) for j in range(i)):
                k = i
                break
        if k is None:  # unreachable for a correct fan
            raise AssertionError("no rotatable fan prefix")
        for j in range(k):
            nxt_color = edge_color(u, fan[j + 1])
            set_color(u, fan[j + 1], -1)
            set_color(u, fan[j], nxt_color)
        set_color(u, fan[k], d)
    return Coloring(EDGES, color, max(color, default=-1) + 1)


# -- eta expansion --------------------------------------------------------------


def expand_eta_coloring(g: Graph, coloring, eta: int) -> Coloring:
    """Split every color class (a forest of max degree eta) into eta proper subclasses.

    Edge ``e`` of class ``c`` gets color ``c*eta + s`` with ``s`` its subcolor.
    """
    colors = tuple(coloring.assignment if isinstance(coloring, Coloring) else coloring)
    bad = verify(g, colors, "eta-stage", eta=eta)
    if bad is not None:
        raise SolverError(f"input is not an eta-stage coloring: {bad.description}")
    palette = (max(colors) + 1 if colors else 0)
    if isinstance(coloring, Coloring):
        palette = coloring.palette
    sub = [-1] * g.edge_count
    for e0 in range(g.edge_count):
        if sub[e0] >= 0:
            continue
        c = colors[e0]
        # walk the tree of class c containing e0, giving each edge a subcolor unused at its parent end
        sub[e0] = 0
        stack = [(v, e0) for v in g.edges[e0]]
        while stack:
            v, via = stack.pop()
            taken = {sub[via]}
            for e in g.incident_edges(v):
                if e == via or colors[e] != c or sub[e] >= 0:
                    continue
                s = next(s for s in range(eta) if s not in taken)
                sub[e] = s
                taken.add(s)
                a, b = g.edges[e]
                stack.append((b if a == v else a, e))
    expanded = [colors[e] * eta + sub[e] for e in range(g.edge_count)]
    return Coloring(EDGES, expanded, palette * eta)


# -- Delta+2 --------------------------------------------------------------------


def recolor_probability(delta: int) -> float:
    """Per-edge switch probability c0/Delta, with c0 taken at max(Delta, 3)."""
    c0 = bounds.girth_threshold_delta_plus_2(max(delta, 3)).constant
    return min(c0 / max(delta, 1), 0.5)


def recolor_delta_plus_2(
    g: Graph,
    seed: int = 0,
    max_restarts: int = 20,
    max_resamples: int = 10**5,
    cap: int = DEFAULT_CAP,
    trace: list | None = None,
) -> SolveReport:
    """Vizing base coloring, then switch edges to one extra color and resample.

    The random variables are per-edge switch indicators. Violations: two
    adjacent switched edges, or a cycle that ends up properly bichromatic.
    Each restart redraws all indicators.
    """
    start = time.perf_counter()
    delta = g.max_degree
    base = vizing_proper_edge_coloring(g).assignment
    extra = delta + 1
    palette = delta + 2
    w = recolor_probability(delta)
    rng = np.random.default_rng(seed)
    total = 0
    success = False
    colors = list(base)
    restarts = 0
    for restarts in range(1, max_restarts + 1):
        switched = rng.random(g.edge_count) < w
        used = 0
        while True:
            colors = [extra if s else b for s, b in zip(switched, base)]
            hit = _edge_pairs(g, colors)
            if hit is None:
                hit = _bichromatic_edge_cycle(g, colors, cap)
                if hit is not None:
                    hit = (_cycle_kind(hit[1], base, colors, g), hit[1])
            if hit is None:
                success = True
                break
            if used >= max_resamples:
                break
            kind, scope = hit
            for e, r in zip(scope, rng.random(len(scope))):
                switched[e] = r < w
            used += 1
            if trace is not None:
                trace.append((kind, scope))
        total += used
        if success:
            break
    coloring = Coloring(EDGES, colors, palette)
    valid = success and verify(g, coloring, "acyclic-edge", cap=cap) is None
    return SolveReport(
        "delta-plus-2",
        g.vertex_count,
        g.edge_count,
        coloring,
        seed,
        total,
        success,
        valid,
        {"restarts": restarts, "w": w},
        time.perf_counter() - start,
    )


def _cycle_kind(scope, base, colors, g: Graph):
    """Classify a properly bichromatic cycle by how its halves looked in the base coloring."""
    # recover cycle order to split halves
    adj = defaultdict(list)
    for e in scope:
        u, v = g.edges[e]
        adj[u].append(e)
        adj[v].append(e)
    order = [scope[0]]
    u, v = g.edges[scope[0]]
    prev, cur = scope[0], v
    while len(order) < len(scope):
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        order.append(nxt)
        a, b = g.edges[nxt]
        cur = b if a == cur else a
        prev = nxt
    halves = (order[0::2], order[1::2])
    mono = [len({base[e] for e in h}) == 1 for h in halves]
    return Kind.BASE_BICHROMATIC_CYCLE if all(mono) else Kind.HALF_MONO_CYCLE
