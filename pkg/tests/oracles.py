"""Brute-force reference implementations, deliberately naive."""

import itertools
import math


def edge_set(g):
    return {(i, j) for i, j in g.edges()}


def adjacent(es, i, j):
    return (min(i, j), max(i, j)) in es


def degrees(g):
    es = edge_set(g)
    return [sum(1 for e in es if v in e) for v in range(g.n)]


def pearson_mixing(g):
    deg = degrees(g)
    xs, ys = [], []
    for i, j in edge_set(g):
        xs += [deg[i], deg[j]]
        ys += [deg[j], deg[i]]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sx = math.sqrt(sum((x - mx) ** 2 for x in xs))
    sy = math.sqrt(sum((y - my) ** 2 for y in ys))
    return cov / (sx * sy)


def local_clustering(g):
    es = edge_set(g)
    out = []
    for v in range(g.n):
        nbrs = [u for u in range(g.n) if adjacent(es, u, v)]
        pairs = list(itertools.combinations(nbrs, 2))
        if not pairs:
            out.append(0.0)
            continue
        out.append(sum(adjacent(es, a, b) for a, b in pairs) / len(pairs))
    return out


def floyd_warshall_mean(g):
    n = g.n
    es = edge_set(g)
    d = [[0 if i == j else (1 if adjacent(es, i, j) else math.inf) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    pairs = list(itertools.combinations(range(n), 2))
    return sum(d[i][j] for i, j in pairs) / len(pairs)


def modularity(g, labels):
    es = edge_set(g)
    deg = degrees(g)
    m = len(es)
    total = 0.0
    for i in range(g.n):
        for j in range(g.n):
            if labels[i] == labels[j]:
                a = 1.0 if adjacent(es, i, j) else 0.0
                total += a - deg[i] * deg[j] / (2 * m)
    return total / (2 * m)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part
