"""Coloring container and the variant catalog."""

from __future__ import annotations

from dataclasses import dataclass

EDGES = "edges"
VERTICES = "vertices"

VARIANT_TARGET = {
    "proper-edge": EDGES,
    "acyclic-edge": EDGES,
    "eta-stage": EDGES,
    "delta-plus-2": EDGES,
    "proper-vertex": VERTICES,
    "acyclic-vertex": VERTICES,
    "star": VERTICES,
    "frugal": VERTICES,
}


class ColoringError(ValueError):
    """Coloring inconsistent with its graph or variant."""


@dataclass(frozen=True)
class Coloring:
    """Colors ``0..palette-1``, one per edge or vertex in index order."""

    target: str
    assignment: tuple[int, ...]
    palette: int

    def __post_init__(self):
        if self.target not in (EDGES, VERTICES):
            raise ColoringError(f"unknown target {self.target!r}")
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        for c in self.assignment:
            if not 0 <= c < self.palette:
                raise ColoringError(f"color {c} outside palette of size {self.palette}")

    def __len__(self):
        return len(self.assignment)

    def __getitem__(self, i):
        return self.assignment[i]

    @property
    def used(self) -> int:
        return len(set(self.assignment))

    @classmethod
    def of(cls, target: str, assignment) -> "Coloring":
        assignment = tuple(int(c) for c in assignment)
        return cls(target, assignment, max(assignment, default=-1) + 1)


def target_of(variant: str) -> str:
    try:
        return VARIANT_TARGET[variant]
    except KeyError:
        raise ColoringError(f"unknown variant {variant!r}; expected one of {sorted(VARIANT_TARGET)}") from None
