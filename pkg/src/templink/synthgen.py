"""Temporal preferential-attachment networks and labeled benchmark splits.

Randomness comes from numpy's ``PCG64`` bit generator seeded with the
integer seed (``np.random.Generator(np.random.PCG64(seed))``).  PCG64 and
the ``Generator.random``/``Generator.integers``/``Generator.permutation``
streams are platform independent, so graphs and splits reproduce
everywhere for a given numpy major version.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import TemporalEdgeList
from .scorers import QueryPairSet

__all__ = ["GrowthParams", "Attacher", "BenchmarkSplit", "generate_pa_network",
           "make_benchmark", "make_rng"]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class GrowthParams:
    n_final: int = 10000
    m: int = 3
    b_offset: float = 0.0
    seed: int = 42

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.n_final <= self.m + 1:
            raise ValueError("n_final must exceed m + 1")
        if not (self.b_offset >= 0 and math.isfinite(self.b_offset)):
            raise ValueError("b_offset must be a finite value >= 0")


class Attacher:
    """Draws attachment targets with probability proportional to ``k + B``.

    A draw is a two-way mixture: with probability ``sum(k) / (sum(k) + B*n)``
    pick a uniformly random edge endpoint (probability ``k_i / sum(k)``),
    otherwise a uniformly random node.  Duplicates within one arrival are
    redrawn, which is exactly sampling without replacement from the
    remaining weights.
    """

    def __init__(self, rng: np.random.Generator, b_offset: float, capacity: int):
        self.rng = rng
        self.b = b_offset
        self.endpoints = np.zeros(2 * capacity, dtype=np.int64)
        self.n_endpoints = 0
        self.n_nodes = 0
        self.degree = np.zeros(capacity, dtype=np.int64)

    def add_node(self) -> int:
        self.n_nodes += 1
        return self.n_nodes - 1

    def add_edge(self, a: int, b: int) -> None:
        if self.n_endpoints + 2 > len(self.endpoints):
            self.endpoints = np.concatenate([self.endpoints, np.zeros_like(self.endpoints)])
        self.endpoints[self.n_endpoints] = a
        self.endpoints[self.n_endpoints + 1] = b
        self.n_endpoints += 2
        self.degree[a] += 1
        self.degree[b] += 1

    def draw_one(self) -> int:
        total = self.n_endpoints + self.b * self.n_nodes
        if self.rng.random() * total < self.n_endpoints:
            return int(self.endpoints[self.rng.integers(self.n_endpoints)])
        return int(self.rng.integers(self.n_nodes))

    def draw(self, m: int) -> list:
        if m > self.n_nodes:
            raise ValueError("cannot draw more distinct targets than nodes")
        chosen: list = []
        while len(chosen) < m:
            x = self.draw_one()
            if x not in chosen:
                chosen.append(x)
        return chosen


def generate_pa_network(params: GrowthParams) -> TemporalEdgeList:
    """Grow a network by preferential attachment.

    Nodes ``0..m`` form a clique at ``t = 0``.  Node ``m + s`` (``s >= 1``)
    arrives at ``t = s`` and links to ``m`` distinct existing nodes.  Each
    edge is recorded as ``(new node, target)`` in draw order.
    """
    rng = make_rng(params.seed)
    m = params.m
    att = Attacher(rng, params.b_offset, params.n_final)
    n_edges = m * (m + 1) // 2 + m * (params.n_final - m - 1)
    u = np.empty(n_edges, dtype=np.int64)
    v = np.empty(n_edges, dtype=np.int64)
    t = np.empty(n_edges)
    pos = 0
    for _ in range(m + 1):
        att.add_node()
    for a in range(m + 1):
        for b in range(a + 1, m + 1):
            att.add_edge(a, b)
            u[pos], v[pos], t[pos] = a, b, 0.0
            pos += 1
    for step in range(1, params.n_final - m):
        targets = att.draw(m)
        new = att.add_node()
        for x in targets:
            att.add_edge(new, x)
            u[pos], v[pos], t[pos] = new, x, float(step)
            pos += 1
    return TemporalEdgeList(u, v, t, params.n_final)


@dataclass
class BenchmarkSplit:
    train_edges: TemporalEdgeList
    pairs: QueryPairSet
    t1: float
    t2: float
    seed: int
    n_uniform_positives: int = 0
    n_topup: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    @property
    def n_positive(self) -> int:
        return int(self.pairs.labels.sum())

    def header(self) -> str:
        return (f"t1={self.t1:g} t2={self.t2:g} seed={self.seed} n_pairs={self.n_pairs} "
                f"positives={self.n_positive} uniform_positives={self.n_uniform_positives} "
                f"topup={self.n_topup}")


def _pair_keys(a, b, n):
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    return lo * n + hi


def make_benchmark(edges: TemporalEdgeList, t1: float, t2: float, n_pairs: int,
                   positive_fraction_cap: float = 0.0, seed: int = 42) -> BenchmarkSplit:
    """Sample labeled query pairs for a train/evaluation window split.

    Training edges are those with ``t <= t1``.  ``n_pairs`` distinct
    unordered pairs are drawn uniformly (by rejection) among pairs of the
    whole node universe that are not connected at ``t1``; a pair is positive
    iff it gains a link in ``(t1, t2]``.  If ``positive_fraction_cap > 0``
    and fewer than ``cap * n_pairs`` positives were drawn, the last-drawn
    negatives are swapped for randomly chosen unsampled positives and the
    set is shuffled; the counts are kept on the split.
    """
    if not t1 < t2:
        raise ValueError("need t1 < t2")
    if not 0.0 <= positive_fraction_cap <= 1.0:
        raise ValueError("positive_fraction_cap must lie in [0, 1]")
    n = edges.node_count
    train = edges.until(t1)
    train_keys = np.unique(_pair_keys(train.u, train.v, n))
    window = (edges.t > t1) & (edges.t <= t2)
    pos_keys = np.setdiff1d(_pair_keys(edges.u[window], edges.v[window], n), train_keys)
    available = n * (n - 1) // 2 - len(train_keys)
    if n_pairs > available:
        raise ValueError(f"n_pairs={n_pairs} exceeds the {available} unconnected pairs")

    rng = make_rng(seed)
    chosen = np.zeros(0, dtype=np.int64)
    while len(chosen) < n_pairs:
        need = n_pairs - len(chosen)
        batch = max(1024, int(need * 1.2))
        a = rng.integers(0, n, batch)
        b = rng.integers(0, n, batch)
        keys = _pair_keys(a, b, n)[a != b]
        keys = keys[~np.isin(keys, train_keys)]
        keys = keys[~np.isin(keys, chosen)]
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
        chosen = np.concatenate([chosen, keys[:need]])

    labels = np.isin(chosen, pos_keys)
    n_uniform = int(labels.sum())
    n_topup = 0
    target = int(math.floor(positive_fraction_cap * n_pairs))
    if n_uniform < target:
        spare = pos_keys[~np.isin(pos_keys, chosen)]
        n_topup = min(target - n_uniform, len(spare), n_pairs - n_uniform)
        if n_topup:
            extra = spare[rng.permutation(len(spare))[:n_topup]]
            neg_idx = np.flatnonzero(~labels)[-n_topup:]
            keep = np.ones(len(chosen), dtype=bool)
            keep[neg_idx] = False
            chosen = np.concatenate([chosen[keep], extra])
            order = rng.permutation(len(chosen))
            chosen = chosen[order]
            labels = np.isin(chosen, pos_keys)

    pairs = QueryPairSet(chosen // n, chosen % n, labels.astype(np.int8))
    return BenchmarkSplit(train, pairs, float(t1), float(t2), seed, n_uniform, n_topup,
                          {"window_positive_pairs": int(len(pos_keys))})
