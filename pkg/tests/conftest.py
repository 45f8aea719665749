import pytest

from citegrowth.graph import Graph

_ACCEPTANCE: list[str] = []


def make(edges, n=None):
    return Graph.from_edges(edges, n)


def star(leaves=3):
    return make([(0, i) for i in range(1, leaves + 1)])


def path(n):
    return make([(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return make([(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return make([(i, j) for i in range(n) for j in range(i + 1, n)])


def two_cliques():
    """Two K4s joined by a single edge (m=13)."""
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i + 4, j + 4) for i, j in edges]
    edges.append((3, 4))
    return make(edges)


@pytest.fixture
def record_acceptance():
    def record(label: str, passed: bool, detail: str) -> None:
        _ACCEPTANCE.append(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
