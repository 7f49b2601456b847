"""Bad-event families over a concrete graph, ready for the local-lemma check.

Every event is a color pattern on a set of variables (edge colors, vertex
colors, or recolor indicators): a tuple of groups that must each be
monochromatic, optionally with the first two groups required to differ.
Two events are dependent exactly when their variable sets meet, and each
variable anchors the clique of all events that contain it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction

import numpy as np

from . import bounds
from .graph import DEFAULT_CAP, ACYCLIC, EnumerationCapError, Graph, enumerate_cycles, enumerate_paths, girth, special_pairs
from .lll import DependencyGraph


class Kind(IntEnum):
    """Event and violation kinds; the integer order is the scan priority."""

    IMPROPER_PAIR = 0
    ADJACENT_EDGE_PAIR = 1
    VERTEX_EDGE = 2
    ETA_STAR = 3
    FRUGAL_SET = 4
    SPECIAL_PAIR = 5
    PATH3 = 6
    PATH4 = 7
    INDUCED_C4 = 8
    ODD_CYCLE_MONOCHROMATIC = 9
    EVEN_CYCLE_BICHROMATIC = 10
    CYCLE_MONO_OR_BICHROMATIC = 11
    BASE_BICHROMATIC_CYCLE = 12
    HALF_MONO_CYCLE = 13

    @property
    def label(self) -> str:
        return "".join(part.capitalize() for part in self.name.split("_"))


class EventError(ValueError):
    """Builder preconditions not met."""


@dataclass(frozen=True)
class Event:
    kind: Kind
    groups: tuple[tuple[int, ...], ...]
    probability: Fraction | float
    distinct: bool = False

    @property
    def scope(self) -> tuple[int, ...]:
        return tuple(sorted(set(itertools.chain.from_iterable(self.groups))))

    def occurs(self, colors) -> bool | np.ndarray:
        """Evaluate on one assignment or, vectorized, on rows of a 2-D array."""
        colors = np.asarray(colors)
        hit = None
        for grp in self.groups:
            vals = colors[..., list(grp)]
            same = np.all(vals == vals[..., :1], axis=-1)
            hit = same if hit is None else hit & same
        if self.distinct:
            hit = hit & (colors[..., self.groups[0][0]] != colors[..., self.groups[1][0]])
        return hit


@dataclass
class EventFamily:
    variant: str
    target: str  # "edges" or "vertices"
    variable_count: int
    palette: int
    events: list[Event]
    mu: list[float]
    params: dict = field(default_factory=dict)
    base: tuple[int, ...] | None = None  # base coloring when variables are recolor indicators

    def __len__(self):
        return len(self.events)

    def colors_of(self, assignment) -> np.ndarray:
        """Colors seen by the events; recolor indicators map to the extra color."""
        a = np.asarray(assignment)
        if self.base is None:
            return a
        return np.where(a.astype(bool), self.palette - 1, np.asarray(self.base))

    def violated(self, assignment) -> list[int]:
        colors = self.colors_of(assignment)
        return [i for i, e in enumerate(self.events) if e.occurs(colors)]

    def any_violated(self, assignments) -> np.ndarray:
        """Row-wise 'some event occurs' for a 2-D array of assignments."""
        colors = self.colors_of(assignments)
        out = np.zeros(colors.shape[0], dtype=bool)
        for e in self.events:
            out |= e.occurs(colors)
        return out

    def anchors(self) -> list[list[int]]:
        """For each variable, the indices of events containing it."""
        table = [[] for _ in range(self.variable_count)]
        for i, e in enumerate(self.events):
            for v in e.scope:
                table[v].append(i)
        return table

    def dependency_graph(self, validate: bool = False) -> DependencyGraph:
        table = self.anchors()
        neighbors = [set() for _ in self.events]
        for members in table:
            for i in members:
                neighbors[i].update(members)
        for i, s in enumerate(neighbors):
            s.discard(i)
        cliques = {i: [tuple(table[v]) for v in e.scope] for i, e in enumerate(self.events)}
        dep = DependencyGraph(
            [float(e.probability) for e in self.events],
            list(self.mu),
            [frozenset(s) for s in neighbors],
            cliques,
        )
        if validate:
            dep.validate()
        return dep

    def count_profile(self) -> dict[tuple[Kind, int], int]:
        """Largest number of events of one (kind, scope size) through a single variable."""
        profile: dict[tuple[Kind, int], int] = {}
        table = self.anchors()
        for members in table:
            local: dict[tuple[Kind, int], int] = {}
            for i in members:
                e = self.events[i]
                key = (e.kind, len(e.scope))
                local[key] = local.get(key, 0) + 1
            for key, n in local.items():
                profile[key] = max(profile.get(key, 0), n)
        return profile


def _alternating(cycle_edges):
    return (tuple(cycle_edges[0::2]), tuple(cycle_edges[1::2]))


def _cycles(g: Graph, max_cycle_len, cap):
    limit = g.vertex_count if max_cycle_len is None else max_cycle_len
    if limit < 3:
        return []
    return enumerate_cycles(g, limit, cap)


def _base_mu(delta: int) -> float:
    return max(delta - 1, 1)


# -- edge variants ------------------------------------------------------------


def _adjacent_pairs(g: Graph):
    for v in range(g.vertex_count):
        for e, f in itertools.combinations(sorted(g.incident_edges(v)), 2):
            yield (e, f)


def build_acyclic_edge(g: Graph, colors: int, max_cycle_len: int | None = None, alpha: float | None = None, cap: int = DEFAULT_CAP) -> EventFamily:
    """Adjacent-pair events and properly-bichromatic even-cycle events."""
    if colors < 2:
        raise EventError("need at least 2 colors")
    if alpha is None:
        alpha = bounds.minimize_univariate(bounds.acyclic_edge_objective, *bounds.UNIT_INTERVAL)[0]
    mu = alpha / _base_mu(g.max_degree)
    events, weights = [], []
    n = Fraction(colors)
    for pair in _adjacent_pairs(g):
        events.append(Event(Kind.ADJACENT_EDGE_PAIR, (pair,), 1 / n))
        weights.append(mu)
    for cyc in _cycles(g, max_cycle_len, cap):
        if len(cyc) % 2:
            continue
        events.append(Event(Kind.EVEN_CYCLE_BICHROMATIC, _alternating(cyc.edges), 1 / n ** (len(cyc) - 2), distinct=True))
        weights.append(mu ** (len(cyc) - 2))
    return EventFamily("acyclic-edge", "edges", g.edge_count, colors, events, weights, {"alpha": alpha})


def build_girth_variant(
    g: Graph,
    colors: int,
    eta: int = 2,
    max_cycle_len: int | None = None,
    alpha: float | None = None,
    cap: int = DEFAULT_CAP,
) -> EventFamily:
    """Events for the eta-stage coloring: crowded stars, and cycles that are
    monochromatic or (for even length) properly bichromatic."""
    if eta < 1:
        raise EventError("eta must be positive")
    g_len = girth(g)
    if g_len != ACYCLIC and g_len < 5:
        raise EventError(f"girth {g_len} below 5")
    if alpha is None:
        alpha = bounds.girth_constant(g_len if g_len != ACYCLIC else 5, max(eta, 2), 1.5)[0]
    mu = alpha / _base_mu(g.max_degree)
    n = Fraction(colors)
    events, weights = [], []
    for v in range(g.vertex_count):
        for star in itertools.combinations(sorted(g.incident_edges(v)), eta + 1):
            events.append(Event(Kind.ETA_STAR, (star,), 1 / n**eta))
            weights.append(mu**eta)
    for cyc in _cycles(g, max_cycle_len, cap):
        m = len(cyc)
        if m % 2 == 0:
            # N monochromatic + N(N-1) proper bichromatic colorings out of N^m
            events.append(Event(Kind.CYCLE_MONO_OR_BICHROMATIC, _alternating(cyc.edges), n**2 / n**m))
        else:
            events.append(Event(Kind.ODD_CYCLE_MONOCHROMATIC, (cyc.edges,), 1 / n ** (m - 1)))
        weights.append(mu ** (m - 1 if m % 2 else m - 2))
    return EventFamily("eta-stage", "edges", g.edge_count, colors, events, weights, {"eta": eta, "alpha": alpha})


def is_proper_edge_coloring(g: Graph, colors) -> bool:
    for v in range(g.vertex_count):
        seen = [colors[e] for e in g.incident_edges(v)]
        if len(seen) != len(set(seen)):
            return False
    return True


def build_delta_plus_2(
    g: Graph,
    base,
    c_over_delta: float | None = None,
    max_cycle_len: int | None = None,
    alpha: float = bounds.DELTA_PLUS_2_ALPHA,
    cap: int = DEFAULT_CAP,
) -> EventFamily:
    """Events on recolor indicators over a proper base edge coloring.

    Each edge independently switches to the extra color with probability
    ``w = c/Delta``. Events: two adjacent edges both switched; a cycle
    bichromatic under the base that stays properly bichromatic; a
    half-monochromatic cycle whose other half all switches.
    """
    base = tuple(int(c) for c in base)
    delta = g.max_degree
    if len(base) != g.edge_count:
        raise EventError("base coloring length does not match the edge count")
    if not is_proper_edge_coloring(g, base):
        raise EventError("base coloring is not proper")
    if base and max(base) > delta:
        raise EventError("base coloring uses more than Delta+1 colors")
    if c_over_delta is None:
        c_over_delta = bounds.girth_threshold_delta_plus_2(max(delta, 3), alpha).constant / max(delta, 1)
    w = float(c_over_delta)
    if not 0.0 < w <= 0.5:
        raise EventError("recolor probability must lie in (0, 1/2]")
    d = max(delta, 1)
    pair_mu = alpha**2 / d**2
    events, weights = [], []
    for pair in _adjacent_pairs(g):
        events.append(Event(Kind.ADJACENT_EDGE_PAIR, (pair,), w * w))
        weights.append(pair_mu)
    for cyc in _cycles(g, max_cycle_len, cap):
        if len(cyc) % 2:
            continue
        k = len(cyc) // 2
        halves = _alternating(cyc.edges)
        mono = [len({base[e] for e in h}) == 1 for h in halves]
        if all(mono):
            p = (1 - w) ** (2 * k) + 2 * w**k * (1 - w) ** k
            events.append(Event(Kind.BASE_BICHROMATIC_CYCLE, halves, p, distinct=True))
            weights.append(pair_mu)
        elif any(mono):
            events.append(Event(Kind.HALF_MONO_CYCLE, halves, w**k * (1 - w) ** k, distinct=True))
            weights.append((alpha / d) ** k)
    return EventFamily(
        "delta-plus-2",
        "edges",
        g.edge_count,
        delta + 2,
        events,
        weights,
        {"w": w, "alpha": alpha},
        base=base,
    )


# -- vertex variants ----------------------------------------------------------


def _edge_events(g: Graph, n: Fraction, mu: float, kind=Kind.VERTEX_EDGE):
    return [Event(kind, ((u, v),), 1 / n) for u, v in g.edges], [mu] * g.edge_count


def build_acyclic_vertex(g: Graph, colors: int, alpha: float = bounds.ACYCLIC_VERTEX_ALPHA, cap: int = DEFAULT_CAP) -> EventFamily:
    """Edge, 4-edge path, induced 4-cycle and special-pair events."""
    if colors < 2:
        raise EventError("need at least 2 colors")
    n = Fraction(colors)
    mu = alpha / max(g.max_degree, 1) ** (4.0 / 3.0)
    events, weights = _edge_events(g, n, mu)
    for p in enumerate_paths(g, 4, cap):
        events.append(Event(Kind.PATH4, ((p[0], p[2], p[4]), (p[1], p[3])), 1 / n**3))
        weights.append(mu**3)
    special = set(special_pairs(g))
    for cyc in enumerate_cycles(g, 4, cap):
        if len(cyc) != 4:
            continue
        v1, v2, v3, v4 = cyc.vertices
        if g.has_edge(v1, v3) or g.has_edge(v2, v4):
            continue
        if (min(v1, v3), max(v1, v3)) in special or (min(v2, v4), max(v2, v4)) in special:
            continue
        events.append(Event(Kind.INDUCED_C4, ((v1, v3), (v2, v4)), 1 / n**2))
        weights.append(mu**2)
    for pair in sorted(special):
        events.append(Event(Kind.SPECIAL_PAIR, (pair,), 1 / n))
        weights.append(mu)
    return EventFamily("acyclic-vertex", "vertices", g.vertex_count, colors, events, weights, {"alpha": alpha})


def build_star(g: Graph, colors: int, alpha: float | None = None, cap: int = DEFAULT_CAP) -> EventFamily:
    """Edge events and bichromatic 3-edge path events."""
    if colors < 2:
        raise EventError("need at least 2 colors")
    delta = max(g.max_degree, 1)
    if alpha is None:
        alpha = bounds.star_alpha(delta)
    n = Fraction(colors)
    mu = alpha / delta**1.5
    events, weights = _edge_events(g, n, mu)
    for p in enumerate_paths(g, 3, cap):
        events.append(Event(Kind.PATH3, ((p[0], p[2]), (p[1], p[3])), 1 / n**2))
        weights.append(mu * mu)
    return EventFamily("star", "vertices", g.vertex_count, colors, events, weights, {"alpha": alpha})


def frugal_alpha(delta: int, beta: int) -> float:
    """Weight parameter that balances the two frugal requirements."""
    return bounds.minimize_univariate(
        lambda a: max(bounds.frugal_requirements(a, delta, beta)), *bounds.HALF_LINE
    )[0]


def build_frugal(g: Graph, colors: int, beta: int = 2, alpha: float | None = None, cap: int = DEFAULT_CAP) -> EventFamily:
    """Edge events and one event per (beta+1)-subset of an open neighborhood."""
    if beta < 2:
        raise EventError("beta must be at least 2")
    if colors < 2:
        raise EventError("need at least 2 colors")
    delta = max(g.max_degree, 1)
    if alpha is None:
        alpha = frugal_alpha(delta, beta)
    n = Fraction(colors)
    mu = alpha / delta
    events, weights = _edge_events(g, n, mu)
    sets = set()
    for u in range(g.vertex_count):
        if math.comb(g.degree(u), beta + 1) + len(sets) > cap:
            raise EnumerationCapError(f"more than {cap} frugal sets")
        sets.update(itertools.combinations(g.adjacency[u], beta + 1))
    set_mu = math.factorial(beta) * mu ** (1 + beta)
    for s in sorted(sets):
        events.append(Event(Kind.FRUGAL_SET, (s,), 1 / n**beta))
        weights.append(set_mu)
    return EventFamily("frugal", "vertices", g.vertex_count, colors, events, weights, {"beta": beta, "alpha": alpha})


# -- count audits -------------------------------------------------------------


@dataclass(frozen=True)
class CountAudit:
    description: str
    observed: int
    bound: float

    @property
    def ok(self) -> bool:
        return self.observed <= self.bound + 1e-9


def audit_counts(family: EventFamily, g: Graph) -> list[CountAudit]:
    """Compare per-variable event counts with the worst-case counts used in the bounds."""
    delta = g.max_degree
    out = []
    for (kind, size), observed in sorted(family.count_profile().items()):
        bound = _count_bound(family, kind, size, delta)
        if bound is not None:
            out.append(CountAudit(f"{kind.label}[{size}]", observed, bound))
    return out


def _count_bound(family: EventFamily, kind: Kind, size: int, delta: int):
    d1 = delta - 1
    if family.variant == "acyclic-edge":
        if kind is Kind.ADJACENT_EDGE_PAIR:
            return 2 * d1
        return d1 ** (size - 2)
    if family.variant == "eta-stage":
        if kind is Kind.ETA_STAR:
            return 2 * math.comb(d1, family.params["eta"])
        return d1 ** (size - 2)
    if family.variant == "delta-plus-2":
        if kind is Kind.ADJACENT_EDGE_PAIR:
            return 2 * delta
        if kind is Kind.BASE_BICHROMATIC_CYCLE:
            return delta
        return 2 * delta ** (size // 2 - 1)
    if family.variant == "acyclic-vertex":
        return {
            Kind.VERTEX_EDGE: delta,
            Kind.PATH4: 2.5 * delta**4,
            Kind.INDUCED_C4: 0.5 * delta ** (8 / 3),
            Kind.SPECIAL_PAIR: delta ** (4 / 3),
        }[kind]
    if family.variant == "star":
        return delta if kind is Kind.VERTEX_EDGE else 2 * delta**3
    if family.variant == "frugal":
        beta = family.params["beta"]
        return delta if kind is Kind.VERTEX_EDGE else delta ** (1 + beta) / math.factorial(beta)
    return None
