"""Network statistics: degree mixing, clustering, distances, modularity, power-law tails."""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, fields
from itertools import chain
from typing import Iterable, Sequence

import numpy as np
from scipy import optimize, sparse, special
from scipy.sparse import csgraph

from .community import Partition, louvain, modularity
from .graph import Graph

log = logging.getLogger(__name__)

EXACT_DISTANCE_LIMIT = 50_000
SAMPLED_SOURCES = 1000


class UndefinedMetricError(ValueError):
    """The statistic has no value on this graph (e.g. mixing on a regular graph)."""


@dataclass
class MetricsReport:
    n: int
    m: int
    mean_degree: float
    mean_neighbor_degree: float | None = None
    mixing: float | None = None
    clustering: float | None = None
    mean_distance: float | None = None
    modularity: float | None = None
    alpha: float | None = None

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list:
        return [getattr(self, name) for name in self.header()]

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class BinnedSeries:
    """Rows of ``(mean own degree, mean neighbor degree, node count)``."""

    bins: list[tuple[float, float, int]]
    excluded: int = 0
    binning: str = "equal-count"


METRIC_NAMES = tuple(MetricsReport.header())


def _ordered_pairs(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    deg = np.fromiter((len(s) for s in g.adj), dtype=np.int64, count=g.n)
    src = np.repeat(np.arange(g.n), deg)
    dst = np.fromiter(chain.from_iterable(g.adj), dtype=np.int64, count=int(deg.sum()))
    return src, dst


def degree_mixing(g: Graph) -> float:
    """Pearson correlation of degrees at the two ends of every link.

    Each edge contributes both ``(k_i, k_j)`` and ``(k_j, k_i)``.
    """
    if g.m == 0:
        raise UndefinedMetricError("degree mixing needs at least one edge")
    deg = np.asarray(g.degrees(), dtype=float)
    src, dst = _ordered_pairs(g)
    x, y = deg[src], deg[dst]
    mean = x.mean()
    var = (x * x).mean() - mean * mean
    if var <= 1e-12 * max(mean * mean, 1.0):
        raise UndefinedMetricError("degree mixing undefined: all link ends have equal degree")
    r = ((x * y).mean() - mean * mean) / var
    return float(min(1.0, max(-1.0, r)))


def local_clustering(g: Graph) -> list[float]:
    adj = g.adj
    out = []
    for u, nbrs in enumerate(adj):
        k = len(nbrs)
        if k < 2:
            out.append(0.0)
            continue
        links = sum(len(nbrs & adj[v]) for v in nbrs) // 2
        out.append(2.0 * links / (k * (k - 1)))
    return out


def clustering(g: Graph) -> float:
    """Mean local clustering; nodes of degree < 2 count as 0."""
    if g.n == 0:
        raise UndefinedMetricError("clustering of an empty graph")
    return math.fsum(local_clustering(g)) / g.n


def transitivity(g: Graph) -> float:
    """Global clustering: 3 x triangles / connected triples."""
    adj = g.adj
    closed = sum(len(nbrs & adj[v]) for nbrs in adj for v in nbrs)
    triples = sum(len(s) * (len(s) - 1) for s in adj)
    return closed / triples if triples else 0.0


def _csr(g: Graph) -> sparse.csr_matrix:
    src, dst = _ordered_pairs(g)
    return sparse.csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(g.n, g.n))


def _distance_rows(a: sparse.csr_matrix, sources: Sequence[int]) -> Iterable[np.ndarray]:
    chunk = max(1, 2_000_000 // max(a.shape[0], 1))
    for start in range(0, len(sources), chunk):
        yield csgraph.shortest_path(a, unweighted=True, directed=False, indices=sources[start:start + chunk])


def mean_distance(g: Graph, rng: random.Random | None = None) -> float:
    """Average shortest-path length over all unordered node pairs (BFS from every node).

    Above :data:`EXACT_DISTANCE_LIMIT` nodes the average is estimated from
    :data:`SAMPLED_SOURCES` random sources; see :func:`sampled_mean_distance`.
    """
    n = g.n
    if n < 2:
        raise UndefinedMetricError("mean distance needs at least two nodes")
    if n > EXACT_DISTANCE_LIMIT:
        mean, se = sampled_mean_distance(g, SAMPLED_SOURCES, rng or random.Random(0))
        log.info("mean distance sampled from %d sources: %.4f +/- %.4f", SAMPLED_SOURCES, mean, se)
        return mean
    a = _csr(g)
    total = 0.0
    for rows in _distance_rows(a, list(range(n))):
        if np.isinf(rows).any():
            raise UndefinedMetricError("mean distance undefined on a disconnected graph")
        total += rows.sum()
    return float(total / (n * (n - 1)))


def sampled_mean_distance(g: Graph, sources: int, rng: random.Random) -> tuple[float, float]:
    """Mean distance from ``sources`` uniform source nodes, with its standard error."""
    n = g.n
    picks = rng.sample(range(n), min(sources, n))
    per_source = []
    for rows in _distance_rows(_csr(g), picks):
        if np.isinf(rows).any():
            raise UndefinedMetricError("mean distance undefined on a disconnected graph")
        per_source.extend(rows.sum(axis=1) / (n - 1))
    vals = np.asarray(per_source)
    se = float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0
    return float(vals.mean()), se


def neighbor_degrees(g: Graph) -> list[float | None]:
    """Mean degree of each node's neighbors; None for isolated nodes."""
    deg = g.degrees()
    return [sum(deg[v] for v in nbrs) / len(nbrs) if nbrs else None for nbrs in g.adj]


def mean_neighbor_degree(g: Graph) -> float:
    vals = [x for x in neighbor_degrees(g) if x is not None]
    if not vals:
        raise UndefinedMetricError("no node has neighbors")
    return math.fsum(vals) / len(vals)


def bin_by_degree(pairs: Iterable[tuple[int, float]], bins: int) -> list[tuple[float, float, int]]:
    """Sort ``(degree, neighbor degree)`` pairs by degree and average them in equal-count bins."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    ordered = sorted(pairs, key=lambda t: t[0])
    if not ordered:
        return []
    rows = []
    for idx in np.array_split(np.arange(len(ordered)), min(bins, len(ordered))):
        chunk = [ordered[i] for i in idx]
        rows.append((
            math.fsum(k for k, _ in chunk) / len(chunk),
            math.fsum(x for _, x in chunk) / len(chunk),
            len(chunk),
        ))
    return rows


def neighbor_degree_pairs(g: Graph) -> list[tuple[int, float]]:
    deg = g.degrees()
    return [(deg[i], x) for i, x in enumerate(neighbor_degrees(g)) if x is not None]


def mean_neighbor_degree_curve(g: Graph, bins: int = 20) -> BinnedSeries:
    """Neighbor degree against own degree, nodes sorted by degree into equal-count bins.

    Isolated nodes have no neighbor degree; they are left out and counted.
    """
    pairs = neighbor_degree_pairs(g)
    return BinnedSeries(bin_by_degree(pairs, bins), excluded=g.n - len(pairs))


def degree_histogram(g: Graph) -> dict[int, int]:
    return dict(sorted(Counter(len(s) for s in g.adj).items()))


def _approx_alpha(tail: np.ndarray, k_min: int) -> float:
    return 1.0 + len(tail) / np.log(tail / (k_min - 0.5)).sum()


def fit_power_law(values: Iterable[int], k_min: int = 2, method: str = "exact") -> float:
    """Discrete power-law exponent of the values ``>= k_min`` by maximum likelihood.

    ``method="exact"`` maximizes ``-alpha * sum(ln k) - N ln zeta(alpha, k_min)``;
    ``method="approx"`` returns the closed form
    ``1 + N / sum(ln(k / (k_min - 1/2)))``, which is biased low for small ``k_min``.
    """
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    data = np.asarray(list(values), dtype=float)
    tail = data[data >= k_min]
    if len(tail) < 10:
        raise UndefinedMetricError(f"only {len(tail)} values >= k_min={k_min}; need at least 10")
    if np.all(tail == k_min):
        raise UndefinedMetricError("all tail values equal k_min; exponent diverges")
    guess = _approx_alpha(tail, k_min) if k_min > 1 else 2.0
    if method == "approx":
        return float(guess)
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    n_tail = len(tail)
    log_sum = np.log(tail).sum()

    def nll(alpha):
        return alpha * log_sum + n_tail * math.log(special.zeta(alpha, k_min))

    res = optimize.minimize_scalar(nll, bounds=(1.0 + 1e-6, max(10.0, 2 * guess)), method="bounded",
                                   options={"xatol": 1e-8})
    return float(res.x)


def ks_distance(values: Iterable[int], k_min: int, alpha: float) -> float:
    """Largest CDF gap between the tail ``>= k_min`` and a discrete power law."""
    tail = np.sort(np.asarray([v for v in values if v >= k_min], dtype=float))
    ks = np.arange(k_min, int(tail[-1]) + 1)
    empirical = np.searchsorted(tail, ks, side="right") / len(tail)
    model = 1.0 - special.zeta(alpha, ks + 1.0) / special.zeta(alpha, k_min)
    return float(np.abs(empirical - model).max())


def select_k_min(values: Iterable[int], min_tail: int = 50) -> tuple[int, float, float]:
    """Pick the tail start minimizing the KS distance to the fitted power law.

    Candidates are the distinct values leaving at least ``min_tail``
    points in the tail. Returns ``(k_min, alpha, ks)``.
    """
    data = np.asarray(list(values), dtype=np.int64)
    data = data[data >= 1]
    best = None
    for k in np.unique(data):
        if (data >= k).sum() < min_tail:
            break
        try:
            alpha = fit_power_law(data, int(k))
        except UndefinedMetricError:
            continue
        d = ks_distance(data, int(k), alpha)
        if best is None or d < best[2]:
            best = (int(k), alpha, d)
    if best is None:
        raise UndefinedMetricError(f"fewer than {min_tail} positive values to fit a tail")
    return best


def power_law_alpha(g: Graph, k_min: int | None = 2, method: str = "exact") -> float:
    """Degree exponent of ``g``; ``k_min=None`` chooses the tail start by :func:`select_k_min`."""
    if k_min is None:
        return select_k_min(g.degrees())[1]
    return fit_power_law(g.degrees(), k_min, method)


def compute_metrics(
    g: Graph,
    metrics: Iterable[str] | None = None,
    seed: int = 0,
    k_min: int | None = None,
) -> MetricsReport:
    """Bundle the requested statistics; undefined or unrequested ones are None."""
    wanted = set(METRIC_NAMES if metrics is None else metrics)
    unknown = wanted - set(METRIC_NAMES)
    if unknown:
        raise ValueError(f"unknown metric(s): {sorted(unknown)}")
    report = MetricsReport(n=g.n, m=g.m, mean_degree=2.0 * g.m / g.n if g.n else 0.0)
    rng = random.Random(seed)

    def attempt(name, fn):
        if name not in wanted:
            return
        try:
            setattr(report, name, fn())
        except UndefinedMetricError as exc:
            log.debug("%s undefined: %s", name, exc)

    attempt("mean_neighbor_degree", lambda: mean_neighbor_degree(g))
    attempt("mixing", lambda: degree_mixing(g))
    attempt("clustering", lambda: clustering(g))
    attempt("mean_distance", lambda: mean_distance(g, rng))
    if g.m:
        attempt("modularity", lambda: modularity(g, louvain(g, rng)))
    attempt("alpha", lambda: power_law_alpha(g, k_min))
    return report


__all__ = [
    "BinnedSeries", "MetricsReport", "Partition", "UndefinedMetricError", "clustering",
    "compute_metrics", "degree_histogram", "degree_mixing", "fit_power_law", "louvain",
    "mean_distance", "mean_neighbor_degree", "mean_neighbor_degree_curve", "modularity",
    "power_law_alpha", "sampled_mean_distance", "select_k_min", "transitivity",
]
