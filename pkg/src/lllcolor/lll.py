"""Dependency graphs and the two local-lemma conditions.

The classical normalizer multiplies ``1 + mu`` over the closed neighborhood
of an event. The improved normalizer sums ``prod(mu)`` only over subsets of
the closed neighborhood that are independent in the dependency graph (the
independence polynomial of the induced subgraph). A clique cover of the
closed neighborhood gives the product upper bound ``prod_i (1 + sum_{y in c_i} mu_y)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

EXACT_CAP = 25
SLACK = 1e-12

CLASSIC = "classic"
IMPROVED_EXACT = "improved-exact"
IMPROVED_CLIQUE = "improved-clique"
MODES = (CLASSIC, IMPROVED_EXACT, IMPROVED_CLIQUE)


class DependencyGraphError(ValueError):
    """Malformed dependency graph or clique cover."""


class ExactCapError(DependencyGraphError):
    """Closed neighborhood too large for exact evaluation."""


@dataclass
class DependencyGraph:
    """Events with probabilities ``p``, weights ``mu`` and an adjacency relation.

    ``cliques`` optionally maps an event index to a list of cliques whose
    union is that event's closed neighborhood.
    """

    p: list[float]
    mu: list[float]
    neighbors: list[frozenset[int]]
    cliques: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)

    @classmethod
    def from_edges(cls, p, mu, edges, cliques=None) -> "DependencyGraph":
        n = len(p)
        if len(mu) != n:
            raise DependencyGraphError("p and mu must have the same length")
        nbrs = [set() for _ in range(n)]
        for i, j in edges:
            if i == j:
                raise DependencyGraphError(f"self-loop at event {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise DependencyGraphError(f"edge ({i}, {j}) out of range")
            nbrs[i].add(j)
            nbrs[j].add(i)
        dep = cls(
            [float(x) for x in p],
            [float(x) for x in mu],
            [frozenset(s) for s in nbrs],
            {int(k): [tuple(c) for c in v] for k, v in (cliques or {}).items()},
        )
        dep.validate()
        return dep

    def __len__(self):
        return len(self.p)

    def closed_neighborhood(self, x: int) -> frozenset[int]:
        return self.neighbors[x] | {x}

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, s in enumerate(self.neighbors) for j in sorted(s) if i < j]

    def validate(self):
        n = len(self.p)
        if len(self.mu) != n or len(self.neighbors) != n:
            raise DependencyGraphError("inconsistent event counts")
        for x, s in enumerate(self.neighbors):
            if x in s:
                raise DependencyGraphError(f"event {x} adjacent to itself")
            for y in s:
                if x not in self.neighbors[y]:
                    raise DependencyGraphError(f"adjacency not symmetric at ({x}, {y})")
        for x, p in enumerate(self.p):
            if not 0.0 <= p <= 1.0:
                raise DependencyGraphError(f"p[{x}] = {p} outside [0, 1]")
            if not self.mu[x] >= 0.0:
                raise DependencyGraphError(f"mu[{x}] = {self.mu[x]} is negative")
        for x in self.cliques:
            self.validate_cover(x, self.cliques[x])

    def validate_cover(self, x: int, cover: Sequence[Sequence[int]]):
        star = self.closed_neighborhood(x)
        covered = set()
        for clique in cover:
            members = set(clique)
            if len(members) != len(clique):
                raise DependencyGraphError(f"clique {tuple(clique)} of event {x} repeats a member")
            if not members <= star:
                raise DependencyGraphError(
                    f"clique {tuple(clique)} leaves the closed neighborhood of event {x}"
                )
            for a in clique:
                if not (members - {a}) <= self.neighbors[a]:
                    raise DependencyGraphError(f"{tuple(clique)} is not a clique")
            covered |= members
        if covered != star:
            raise DependencyGraphError(f"cliques of event {x} miss {sorted(star - covered)}")


def _weights(dep: DependencyGraph, mu):
    return dep.mu if mu is None else mu


def phi_classic(dep: DependencyGraph, x: int, mu: Sequence[float] | None = None) -> float:
    mu = _weights(dep, mu)
    value = 1.0 + mu[x]
    for y in dep.neighbors[x]:
        value *= 1.0 + mu[y]
    return value


def independence_polynomial(dep: DependencyGraph, members, mu: Sequence[float] | None = None) -> float:
    """Sum over independent subsets R of ``members`` of prod(mu[y] for y in R).

    The empty set contributes 1. Branches on one vertex at a time: either it is
    left out, or it is taken and its neighbors are dropped.
    """
    mu = _weights(dep, mu)
    members = sorted(members)
    if len(members) > EXACT_CAP:
        raise ExactCapError(
            f"{len(members)} events exceed the exact cap of {EXACT_CAP}; use the clique bound"
        )
    local = {v: i for i, v in enumerate(members)}
    nbr_mask = [0] * len(members)
    for i, v in enumerate(members):
        for w in dep.neighbors[v]:
            j = local.get(w)
            if j is not None:
                nbr_mask[i] |= 1 << j
    weights = [mu[v] for v in members]
    memo = {0: 1.0}

    def z(mask):
        hit = memo.get(mask)
        if hit is not None:
            return hit
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        value = z(rest)
        if weights[i]:
            value += weights[i] * z(rest & ~nbr_mask[i])
        memo[mask] = value
        return value

    return z((1 << len(members)) - 1)


def phi_star_exact(dep: DependencyGraph, x: int, mu: Sequence[float] | None = None) -> float:
    return independence_polynomial(dep, dep.closed_neighborhood(x), mu)


def phi_star_clique_bound(
    dep: DependencyGraph,
    x: int,
    mu: Sequence[float] | None = None,
    cover: Sequence[Sequence[int]] | None = None,
) -> float:
    mu = _weights(dep, mu)
    if cover is None:
        if x not in dep.cliques:
            raise DependencyGraphError(f"no clique cover declared for event {x}")
        cover = dep.cliques[x]
    else:
        dep.validate_cover(x, cover)
    value = 1.0
    for clique in cover:
        value *= 1.0 + math.fsum(mu[y] for y in clique)
    return value


_PHI = {
    CLASSIC: phi_classic,
    IMPROVED_EXACT: phi_star_exact,
    IMPROVED_CLIQUE: phi_star_clique_bound,
}


@dataclass(frozen=True)
class EventCheck:
    index: int
    p: float
    bound: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.bound - self.p


@dataclass(frozen=True)
class ConditionReport:
    mode: str
    events: tuple[EventCheck, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.events)

    @property
    def min_margin(self) -> float:
        return min((e.margin for e in self.events), default=math.inf)

    def failures(self) -> list[EventCheck]:
        return [e for e in self.events if not e.passed]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "pass": self.passed,
            "events": [
                {"index": e.index, "p": e.p, "bound": e.bound, "margin": e.margin, "pass": e.passed}
                for e in self.events
            ],
        }


def check_condition(
    dep: DependencyGraph, mode: str = IMPROVED_CLIQUE, mu: Sequence[float] | None = None
) -> ConditionReport:
    """Test ``p_x <= mu_x / phi_x`` for every event under the chosen normalizer."""
    if mode not in _PHI:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    mu = _weights(dep, mu)
    phi = _PHI[mode]
    checks = []
    for x, p in enumerate(dep.p):
        bound = mu[x] / phi(dep, x, mu)
        checks.append(EventCheck(x, p, bound, p <= bound * (1.0 + SLACK)))
    return ConditionReport(mode, tuple(checks))


def uniform_mu_scan(
    dep: DependencyGraph, mode: str, lo: float = 1e-4, hi: float = 1e2, points: int = 1000
) -> tuple[float, ConditionReport]:
    """Best uniform weight on a log grid, judged by the smallest margin."""
    best = None
    for i in range(points):
        m = lo * (hi / lo) ** (i / (points - 1))
        report = check_condition(dep, mode, [m] * len(dep))
        if best is None or report.min_margin > best[1].min_margin:
            best = (m, report)
    return best


def greedy_clique_cover(dep: DependencyGraph, x: int) -> list[tuple[int, ...]]:
    """Cover the closed neighborhood of ``x`` with cliques that all contain ``x``."""
    uncovered = sorted(dep.neighbors[x])
    cover = []
    while uncovered:
        clique = [x, uncovered[0]]
        for y in uncovered[1:]:
            if all(y in dep.neighbors[c] for c in clique):
                clique.append(y)
        cover.append(tuple(sorted(clique)))
        taken = set(clique)
        uncovered = [y for y in uncovered if y not in taken]
    return cover or [(x,)]


# -- JSON interchange ---------------------------------------------------------


def to_json_dict(dep: DependencyGraph) -> dict:
    return {
        "events": [{"p": p, "mu": m} for p, m in zip(dep.p, dep.mu)],
        "edges": [list(e) for e in dep.edges()],
        "cliques": {str(k): [list(c) for c in v] for k, v in sorted(dep.cliques.items())},
    }


def from_json_dict(data: dict) -> DependencyGraph:
    try:
        events = data["events"]
        p = [e["p"] for e in events]
        mu = [e["mu"] for e in events]
        edges = [tuple(e) for e in data.get("edges", [])]
        cliques = {int(k): v for k, v in data.get("cliques", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise DependencyGraphError(f"malformed dependency-graph JSON: {exc}") from None
    return DependencyGraph.from_edges(p, mu, edges, cliques)


def loads(text: str) -> DependencyGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DependencyGraphError(f"invalid JSON: {exc}") from None
    return from_json_dict(data)
