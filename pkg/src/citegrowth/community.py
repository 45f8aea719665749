"""Modularity and multi-level (Louvain) modularity maximization."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph


@dataclass
class Partition:
    """Community id per node, ids dense in ``0..k-1``."""

    assignment: list[int]

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def n_communities(self) -> int:
        return len(set(self.assignment))

    def communities(self) -> list[set[int]]:
        groups: dict[int, set[int]] = {}
        for node, c in enumerate(self.assignment):
            groups.setdefault(c, set()).add(node)
        return [groups[c] for c in sorted(groups)]

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        remap: dict = {}
        return cls([remap.setdefault(c, len(remap)) for c in labels])


def modularity(g: Graph, part: Partition | list[int]) -> float:
    """Q = sum over communities of ``m_c/m - (d_c/2m)^2``."""
    labels = part.assignment if isinstance(part, Partition) else list(part)
    if len(labels) != g.n:
        raise ValueError(f"partition covers {len(labels)} nodes, graph has {g.n}")
    m = g.m
    if m == 0:
        raise ValueError("modularity is undefined for an edgeless graph")
    inner: dict[int, int] = {}
    total: dict[int, int] = {}
    for i, nbrs in enumerate(g.adj):
        c = labels[i]
        total[c] = total.get(c, 0) + len(nbrs)
        for j in nbrs:
            if i < j and labels[j] == c:
                inner[c] = inner.get(c, 0) + 1
    two_m = 2.0 * m
    return sum(inner.get(c, 0) / m - (d / two_m) ** 2 for c, d in total.items())


def _one_level(adj: list[dict[int, float]], loops: list[float], two_m: float, rng: random.Random) -> tuple[list[int], bool]:
    """Local moving phase on a weighted graph. Returns node->community and whether anything moved."""
    n = len(adj)
    comm = list(range(n))
    k = [sum(nbrs.values()) + 2.0 * loops[i] for i, nbrs in enumerate(adj)]
    tot = k[:]
    order = list(range(n))
    moved_any = False
    while True:
        rng.shuffle(order)
        moves = 0
        for i in order:
            ci = comm[i]
            ki = k[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            scale = ki / two_m
            best_c = ci
            best_gain = links.get(ci, 0.0) - tot[ci] * scale
            for c, w in links.items():
                gain = w - tot[c] * scale
                if gain > best_gain + 1e-12:
                    best_gain, best_c = gain, c
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moves += 1
        if moves == 0:
            break
        moved_any = True
    return comm, moved_any


def louvain(g: Graph, rng: random.Random | int | None = None) -> Partition:
    """Greedy multi-level modularity maximization.

    Nodes are moved to the neighboring community with the largest
    modularity gain (staying put on ties) until no move helps; the
    communities are then collapsed into weighted super-nodes and the
    procedure repeats on the smaller graph. Visit order is shuffled by
    ``rng`` on every pass.
    """
    if g.m == 0:
        raise ValueError("louvain needs at least one edge")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    adj: list[dict[int, float]] = [{j: 1.0 for j in nbrs} for nbrs in g.adj]
    loops = [0.0] * g.n
    two_m = 2.0 * g.m
    membership = list(range(g.n))

    while True:
        comm, moved = _one_level(adj, loops, two_m, rng)
        if not moved:
            break
        remap: dict[int, int] = {}
        dense = [remap.setdefault(c, len(remap)) for c in comm]
        membership = [dense[c] for c in membership]
        size = len(remap)
        new_adj: list[dict[int, float]] = [{} for _ in range(size)]
        new_loops = [0.0] * size
        for i, nbrs in enumerate(adj):
            ci = dense[i]
            new_loops[ci] += loops[i]
            for j, w in nbrs.items():
                cj = dense[j]
                if ci == cj:
                    # each internal edge is seen from both ends
                    new_loops[ci] += 0.5 * w
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
        adj, loops = new_adj, new_loops
        if size == 1:
            break
    return Partition.from_labels(membership)
