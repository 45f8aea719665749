"""Undirected simple graph with dense integer node ids."""

from __future__ import annotations

import logging
from typing import Iterable, Iterator

log = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Raised for a malformed edge-list line."""


class Graph:
    """Simple undirected graph backed by per-node adjacency sets.

    Node ids are ``0..n-1`` in insertion order. Self-loops and parallel
    edges are refused by :meth:`add_edge`.
    """

    __slots__ = ("adj", "edge_count")

    def __init__(self, n: int = 0):
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.edge_count = 0

    def __len__(self) -> int:
        return len(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={len(self.adj)}, m={self.edge_count})"

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return self.edge_count

    def add_node(self) -> int:
        self.adj.append(set())
        return len(self.adj) - 1

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self.adj):
            raise KeyError(f"unknown node id {i}")

    def add_edge(self, i: int, j: int) -> bool:
        """Insert edge ``{i, j}``; return False for self-loops and duplicates."""
        self._check(i)
        self._check(j)
        if i == j or j in self.adj[i]:
            return False
        self.adj[i].add(j)
        self.adj[j].add(i)
        self.edge_count += 1
        return True

    def has_edge(self, i: int, j: int) -> bool:
        self._check(i)
        self._check(j)
        return j in self.adj[i]

    def neighbors(self, i: int) -> set[int]:
        self._check(i)
        return self.adj[i]

    def degree(self, i: int) -> int:
        self._check(i)
        return len(self.adj[i])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(i, j)`` with ``i < j``."""
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if i < j:
                    yield i, j

    def connected_components(self) -> list[set[int]]:
        seen = [False] * len(self.adj)
        components = []
        for start in range(len(self.adj)):
            if seen[start]:
                continue
            seen[start] = True
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self.adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.add(v)
                        stack.append(v)
            components.append(comp)
        return components

    def is_connected(self) -> bool:
        return len(self.adj) > 0 and len(self.connected_components()) == 1

    def subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..k-1`` in ascending id order."""
        keep = sorted(set(nodes))
        index = {old: new for new, old in enumerate(keep)}
        sub = Graph(len(keep))
        for old in keep:
            i = index[old]
            row = sub.adj[i]
            for v in self.adj[old]:
                j = index.get(v)
                if j is not None:
                    row.add(j)
        sub.edge_count = sum(len(s) for s in sub.adj) // 2
        return sub

    def largest_component(self) -> "Graph":
        comps = self.connected_components()
        if not comps:
            raise ValueError("largest_component of an empty graph")
        return self.subgraph(max(comps, key=len))

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = [set(s) for s in self.adj]
        g.edge_count = self.edge_count
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        edges = list(edges)
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        g = cls(n)
        for i, j in edges:
            g.add_edge(i, j)
        return g

    @classmethod
    def from_edge_list(cls, lines: Iterable[str]) -> "Graph":
        g, _ = read_edge_list(lines)
        return g

    def to_edge_list(self) -> list[str]:
        return [f"{i} {j}" for i, j in self.edges()]


def read_edge_list(lines: Iterable[str]) -> tuple[Graph, int]:
    """Parse ``u v`` lines into a graph, returning it with the dropped-line count.

    Ids are compacted to ``0..n-1`` by first appearance. Self-loops and
    repeated edges are dropped and logged, blank and ``#`` lines skipped.
    """
    index: dict[int, int] = {}
    g = Graph()
    dropped = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected 'u v', got {raw.rstrip()!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer node id in {raw.rstrip()!r}") from None
        ids = []
        for x in (u, v):
            if x not in index:
                index[x] = g.add_node()
            ids.append(index[x])
        if not g.add_edge(ids[0], ids[1]):
            dropped += 1
    if dropped:
        log.warning("dropped %d self-loop or duplicate edge line(s)", dropped)
    return g, dropped


def write_edge_list(g: Graph, path, header: dict | None = None) -> None:
    with open(path, "w") as fh:
        for key, value in (header or {}).items():
            fh.write(f"# {key}={value}\n")
        for i, j in g.edges():
            fh.write(f"{i} {j}\n")


def load_edge_list(path) -> Graph:
    with open(path) as fh:
        return Graph.from_edge_list(fh)
