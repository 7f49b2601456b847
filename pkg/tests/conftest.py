import pytest

from lllcolor import graph as G

ACCEPTANCE_LINES = []


def catalog(max_vertices=12):
    """Small named graphs used across the suite."""
    graphs = {
        "K3": G.complete(3),
        "K4": G.complete(4),
        "K5": G.complete(5),
        "K6": G.complete(6),
        "C4": G.cycle(4),
        "C5": G.cycle(5),
        "C6": G.cycle(6),
        "C7": G.cycle(7),
        "C8": G.cycle(8),
        "C11": G.cycle(11),
        "P5": G.path(5),
        "P8": G.path(8),
        "star4": G.star(4),
        "K2,3": G.complete_bipartite(2, 3),
        "K3,3": G.complete_bipartite(3, 3),
        "cube": G.hypercube(3),
        "petersen": G.petersen(),
        "sub-K4": G.subdivide(G.complete(4), 1),
        "gnp8": G.gnp(8, 0.45, 3),
        "gnp7": G.gnp(7, 0.6, 5),
        "rr8": G.random_regular(8, 3, 2),
        "rr12": G.random_regular(12, 3, 4),
    }
    return {k: g for k, g in graphs.items() if g.vertex_count <= max_vertices}


@pytest.fixture
def record_acceptance():
    def record(name, ok, detail=""):
        line = f"{name}: {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
