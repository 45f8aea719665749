"""Growth models: forest fire (FF), its probabilistic-link variant (BTF),
link copying with ambassador links (CPY) and the citation model (CIT).

Every model grows one node per *episode*. The new node picks a uniformly
random ambassador and burns outward breadth-first; each ambassador
spreads the fire to a geometric number of its not-yet-burned neighbors,
with mean ``p/(1-p)``. The models differ only in which nodes get linked:

* FF links to every burned node.
* BTF links to each burned node independently with probability ``q``.
* CIT links, from every ambassador, to a geometric number (mean
  ``q/(1-q)``) of that ambassador's not-yet-linked neighbors, and never
  to the ambassador itself on that account.
* CPY does what CIT does and also links to each ambassador.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import asdict, dataclass, field
from enum import Enum

from .graph import Graph
from .rng import Rng

log = logging.getLogger(__name__)

BUDGET_FACTOR = 100


class Model(str, Enum):
    FF = "ff"
    BTF = "btf"
    CPY = "cpy"
    CIT = "cit"

    @classmethod
    def parse(cls, value: "str | Model") -> "Model":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown model {value!r}; choose from {[m.value for m in cls]}") from None


class GenerationError(RuntimeError):
    """The target component size was not reached within the episode budget."""


@dataclass(frozen=True)
class ModelParams:
    kind: Model
    n: int
    p: float
    q: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", Model.parse(self.kind))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0.0 <= self.p < 0.5:
            raise ValueError(f"burning probability p must lie in [0, 1/2), got {self.p}")
        if self.kind is not Model.FF and not 0.0 <= self.q < 1.0:
            raise ValueError(f"linking probability q must lie in [0, 1), got {self.q}")

    def to_config(self) -> dict[str, str]:
        d = asdict(self)
        d["kind"] = self.kind.value
        return {k: str(v) for k, v in d.items()}

    @classmethod
    def from_config(cls, block: dict) -> "ModelParams":
        return cls(
            kind=Model.parse(block["kind"]),
            n=int(block["n"]),
            p=float(block["p"]),
            q=float(block.get("q", 0.0)),
            seed=int(block.get("seed", 0)),
        )


@dataclass
class EpisodeState:
    """Bookkeeping for one insertion: who was burned, who gets linked."""

    burned: set[int] = field(default_factory=set)
    linked: list[int] = field(default_factory=list)
    frontier: deque = field(default_factory=deque)
    visited: list[int] = field(default_factory=list)  # ambassadors in pop order

    def __post_init__(self):
        self._linked_set = set(self.linked)

    def link(self, j: int) -> bool:
        if j in self._linked_set:
            return False
        self._linked_set.add(j)
        self.linked.append(j)
        return True

    def is_linked(self, j: int) -> bool:
        return j in self._linked_set


@dataclass
class GenerationLog:
    episodes: int = 0
    isolated_discards: int = 0
    burned_total: int = 0
    dropped_duplicate_edges: int = 0

    @property
    def burned_per_episode(self) -> float:
        return self.burned_total / self.episodes if self.episodes else 0.0

    def record(self, state: EpisodeState) -> None:
        self.episodes += 1
        self.burned_total += len(state.burned)
        if not state.linked:
            self.isolated_discards += 1

    def as_dict(self) -> dict:
        d = asdict(self)
        d["burned_per_episode"] = self.burned_per_episode
        return d


def _log_ratio(prob: float) -> float | None:
    # log of the geometric continuation ratio; None means the draw is always 0
    return math.log(prob) if prob > 0 else None


def _draw(rng: Rng, log_ratio: float | None) -> int:
    return 0 if log_ratio is None else rng._geometric(log_ratio)


def burn_episode(g: Graph, p: float, rng: Rng, link_prob: float = 1.0) -> EpisodeState:
    """Run one FF/BTF burning episode against ``g`` without mutating it.

    Every burned node (the first ambassador included) is linked with
    probability ``link_prob``: 1 gives FF, ``q`` gives BTF.
    """
    lr = _log_ratio(p)
    a = rng.randrange(g.n)
    st = EpisodeState(burned={a}, frontier=deque([a]))

    def maybe_link(j):
        if link_prob >= 1.0 or (link_prob > 0.0 and rng.random() < link_prob):
            st.link(j)

    maybe_link(a)
    adj = g.adj
    while st.frontier:
        amb = st.frontier.popleft()
        st.visited.append(amb)
        x = _draw(rng, lr)
        if x == 0:
            continue
        fresh = [v for v in adj[amb] if v not in st.burned]
        for v in rng.sample_subset(fresh, x):
            st.burned.add(v)
            maybe_link(v)
            st.frontier.append(v)
    return st


def cite_episode(
    g: Graph, p: float, q: float, rng: Rng, link_ambassador: bool = False
) -> EpisodeState:
    """Run one CIT (or, with ``link_ambassador``, CPY) episode without mutating ``g``.

    Burning and linking are separate draws from each ambassador's
    neighborhood, so the burned and linked sets may overlap or not.
    """
    lr_p = _log_ratio(p)
    lr_q = _log_ratio(q)
    a = rng.randrange(g.n)
    st = EpisodeState(burned={a}, frontier=deque([a]))
    adj = g.adj
    while st.frontier:
        amb = st.frontier.popleft()
        st.visited.append(amb)
        if link_ambassador:
            st.link(amb)
        xp = _draw(rng, lr_p)
        if xp:
            fresh = [v for v in adj[amb] if v not in st.burned]
            for v in rng.sample_subset(fresh, xp):
                st.burned.add(v)
                st.frontier.append(v)
        xq = _draw(rng, lr_q)
        if xq:
            unlinked = [v for v in adj[amb] if not st.is_linked(v)]
            for v in rng.sample_subset(unlinked, xq):
                st.link(v)
    return st


def run_episode(g: Graph, kind: Model, p: float, q: float, rng: Rng) -> EpisodeState:
    if kind is Model.FF:
        return burn_episode(g, p, rng, 1.0)
    if kind is Model.BTF:
        return burn_episode(g, p, rng, q)
    return cite_episode(g, p, q, rng, link_ambassador=kind is Model.CPY)


def _commit(g: Graph, targets: list[int], genlog: GenerationLog | None) -> int:
    i = g.add_node()
    formed = 0
    for j in targets:
        if g.add_edge(i, j):
            formed += 1
        elif genlog is not None:
            genlog.dropped_duplicate_edges += 1
    return formed


def insert_node_ff(g: Graph, p: float, rng: Rng, link_prob: float = 1.0) -> int:
    """Add one node by FF (``link_prob=1``) or BTF burning; return links formed."""
    if g.n == 0:
        raise ValueError("cannot insert into an empty graph")
    return _commit(g, burn_episode(g, p, rng, link_prob).linked, None)


def insert_node_cit(g: Graph, p: float, q: float, rng: Rng, link_ambassador: bool = False) -> int:
    """Add one node by CIT (or CPY) dynamics; return links formed."""
    if g.n == 0:
        raise ValueError("cannot insert into an empty graph")
    return _commit(g, cite_episode(g, p, q, rng, link_ambassador).linked, None)


def _seed_graph(kind: Model) -> Graph:
    if kind in (Model.FF, Model.BTF):
        return Graph(1)
    g = Graph(2)
    g.add_edge(0, 1)
    return g


def grow_to_component(params: ModelParams, budget: int | None = None) -> tuple[Graph, GenerationLog]:
    """Insert nodes until the connected network has exactly ``params.n`` nodes.

    An episode that links nothing would leave an isolated node outside
    the component; it is discarded instead, so isolated nodes never
    accumulate as future ambassadors. The result is connected by
    construction.
    """
    kind, n, p, q = params.kind, params.n, params.p, params.q
    rng = Rng(params.seed)
    g = _seed_graph(kind)
    genlog = GenerationLog()
    budget = BUDGET_FACTOR * n if budget is None else budget

    while g.n < n:
        if genlog.episodes >= budget:
            raise GenerationError(
                f"{kind.value.upper()} with p={p}, q={q} did not reach {n} connected nodes "
                f"within {budget} episodes (reached {g.n}); linking is too sparse in this regime"
            )
        st = run_episode(g, kind, p, q, rng)
        genlog.record(st)
        if st.linked:
            _commit(g, st.linked, genlog)
    return g, genlog


def generate(params: ModelParams) -> tuple[Graph, GenerationLog]:
    """Grow one reproducible realization of ``params``; see :func:`grow_to_component`."""
    g, genlog = grow_to_component(params)
    log.debug("generated %s: n=%d m=%d %s", params.kind.value, g.n, g.m, genlog)
    return g, genlog
