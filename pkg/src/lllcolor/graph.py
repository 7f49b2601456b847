"""Simple undirected graphs: structure queries, generators and DIMACS I/O.

Edges are stored in input order; an edge's position in ``Graph.edges`` is its
index, and edge colorings refer to edges by that index.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

ACYCLIC = "acyclic"
DEFAULT_CAP = 10**6


class GraphError(ValueError):
    """Invalid graph, generator parameters or DIMACS input."""


class EnumerationCapError(RuntimeError):
    """An exhaustive listing grew past its configured cap."""


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _edge_ids: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        canon = []
        ids = {}
        nbrs = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range")
            key = (u, v) if u < v else (v, u)
            if key in ids:
                raise GraphError(f"duplicate edge {key}")
            ids[key] = len(canon)
            canon.append(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(n)) for n in nbrs))
        object.__setattr__(self, "_edge_ids", ids)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max((len(n) for n in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_ids

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_ids[(u, v) if u < v else (v, u)]

    def incident_edges(self, v: int) -> list[int]:
        """Edge indices at ``v``, ordered by neighbor."""
        return [self.edge_id(v, w) for w in self.adjacency[v]]

    def stats(self) -> "GraphStats":
        return GraphStats(self.vertex_count, self.edge_count, self.max_degree, girth(self))


@dataclass(frozen=True)
class GraphStats:
    vertex_count: int
    edge_count: int
    max_degree: int
    girth: int | str


@dataclass(frozen=True)
class Cycle:
    """A simple cycle; ``vertices[i]`` and ``vertices[i+1]`` are joined by ``edges[i]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self):
        return len(self.edges)

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))


# -- structure queries ------------------------------------------------------


def girth(g: Graph) -> int | str:
    """Length of a shortest cycle, or ``ACYCLIC`` for a forest.

    Runs a BFS from every vertex; the first non-tree edge seen from a root
    closes a cycle through it, and the minimum over roots is exact.
    """
    best = None
    n = g.vertex_count
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return ACYCLIC if best is None else best


def enumerate_cycles(g: Graph, max_len: int, cap: int = DEFAULT_CAP) -> list[Cycle]:
    """All simple cycles with at most ``max_len`` edges, each exactly once.

    Each cycle is rooted at its smallest vertex and walked in the direction
    whose second vertex is smaller than its last one, so no rotation or
    reflection is ever produced twice.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    adj = g.adjacency
    out: list[Cycle] = []
    for s in range(g.vertex_count):
        path = [s]
        on_path = {s}
        # stack[i] iterates the candidate successors of path[i]
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                if len(path) > 1:
                    on_path.discard(path.pop())
                continue
            closed_len = len(path) + 1
            if closed_len >= 3 and path[1] < w and g.has_edge(s, w):
                out.append(_cycle_from_vertices(g, tuple(path) + (w,)))
                if len(out) > cap:
                    raise EnumerationCapError(f"more than {cap} cycles")
            if closed_len < max_len:
                path.append(w)
                on_path.add(w)
                stack.append(iter([x for x in adj[w] if x > s and x not in on_path]))
    out.sort(key=lambda c: (len(c), c.key))
    return out


def _cycle_from_vertices(g: Graph, verts: tuple[int, ...]) -> Cycle:
    k = len(verts)
    edges = tuple(g.edge_id(verts[i], verts[(i + 1) % k]) for i in range(k))
    return Cycle(verts, edges)


def enumerate_paths(g: Graph, edge_count: int, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """Simple paths with ``edge_count`` edges, as vertex sequences.

    Every undirected path is reported once, oriented so that its first
    endpoint is the smaller one.
    """
    if edge_count < 1:
        raise ValueError("edge_count must be positive")
    out = []
    adj = g.adjacency

    def extend(path):
        if len(path) == edge_count + 1:
            if path[0] < path[-1]:
                out.append(tuple(path))
                if len(out) > cap:
                    raise EnumerationCapError(f"more than {cap} paths")
            return
        for w in adj[path[-1]]:
            if w not in path:
                path.append(w)
                extend(path)
                path.pop()

    for v in range(g.vertex_count):
        extend([v])
    out.sort()
    return out


def common_neighbor_counts(g: Graph) -> dict[tuple[int, int], int]:
    """Common-neighbor count for every pair of distinct vertices at distance <= 2."""
    counts: dict[tuple[int, int], int] = {}
    for w in range(g.vertex_count):
        for u, v in itertools.combinations(g.adjacency[w], 2):
            counts[(u, v)] = counts.get((u, v), 0) + 1
    return counts


def special_pairs(g: Graph) -> list[tuple[int, int]]:
    """Non-adjacent pairs with more than Delta^(2/3) common neighbors.

    Tested exactly as t**3 > Delta**2.
    """
    delta2 = g.max_degree ** 2
    return sorted(
        pair
        for pair, t in common_neighbor_counts(g).items()
        if t ** 3 > delta2 and not g.has_edge(*pair)
    )


# -- generators -------------------------------------------------------------


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Graph:
    _need(leaves >= 1, "star needs at least one leaf")
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    _need(a >= 1 and b >= 1, "complete bipartite needs both sides nonempty")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def hypercube(d: int) -> Graph:
    _need(d >= 1, "hypercube needs d >= 1")
    n = 1 << d
    return Graph(n, tuple((v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)))


def random_regular(n: int, d: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Uniform-ish d-regular graph from the pairing model.

    Pairings containing a loop or a repeated edge are rejected and redrawn.
    """
    _need(n >= 1 and 0 <= d < n, "random_regular needs 0 <= d < n")
    _need(n * d % 2 == 0, "random_regular needs n*d even")
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        perm = rng.permutation(points).reshape(-1, 2)
        if np.any(perm[:, 0] == perm[:, 1]):
            continue
        pairs = {(min(u, v), max(u, v)) for u, v in perm.tolist()}
        if len(pairs) == len(perm):
            return Graph(n, tuple(sorted(pairs)))
    raise GraphError(f"random_regular({n}, {d}): no simple pairing after {max_tries} tries")


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p)."""
    _need(n >= 1 and 0.0 <= p <= 1.0, "gnp needs n >= 1 and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, tuple(e for e, k in zip(pairs, keep) if k))


def subdivide(g: Graph, k: int) -> Graph:
    """Replace every edge by a path of ``k + 1`` edges."""
    _need(k >= 0, "subdivide needs k >= 0")
    n = g.vertex_count
    edges = []
    for i, (u, v) in enumerate(g.edges):
        chain = [u] + [n + i * k + j for j in range(k)] + [v]
        edges.extend(zip(chain, chain[1:]))
    return Graph(n + k * g.edge_count, tuple(edges))


def generate(kind: str, **params) -> Graph:
    """Build a graph by family name; parameters are passed through by keyword."""
    makers = {
        "complete": complete,
        "cycle": cycle,
        "path": path,
        "star": star,
        "complete-bipartite": complete_bipartite,
        "petersen": petersen,
        "hypercube": hypercube,
        "random-regular": random_regular,
        "gnp": gnp,
        "subdivide": subdivide,
    }
    try:
        maker = makers[kind.replace("_", "-")]
    except KeyError:
        raise GraphError(f"unknown graph kind {kind!r}") from None
    try:
        return maker(**params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {kind}: {exc}") from None


def _need(ok: bool, message: str):
    if not ok:
        raise GraphError(message)


# -- DIMACS -----------------------------------------------------------------


def parse_dimacs(text: str) -> Graph:
    """Read the DIMACS edge format (1-indexed vertices)."""
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphError(f"line {lineno}: malformed problem line")
            n, m = _ints(parts[2:], lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: malformed edge line")
            u, v = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"line {lineno}: vertex out of range")
            if u == v:
                raise GraphError(f"line {lineno}: self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise GraphError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphError("missing problem line")
    if len(edges) != m:
        raise GraphError(f"edge count mismatch: header says {m}, found {len(edges)}")
    return Graph(n, tuple(edges))


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphError(f"line {lineno}: expected integers") from None


def write_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.vertex_count} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
