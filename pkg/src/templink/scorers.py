"""Pair scorers over a fixed adjacency snapshot.

Every path-based scorer works on whole batches of query pairs at once: the
rows of both endpoints are gathered into two sparse matrices and multiplied
elementwise, which is a sorted-merge intersection of the two neighbour lists
done by scipy.  Nothing of size N x N is ever materialized.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

__all__ = [
    "QueryPairSet",
    "METHODS",
    "score_pa",
    "score_cn",
    "score_aa",
    "score_ra",
    "score_l3",
    "score_batch",
]

PAIR_CHUNK = 1 << 17
L3_CHUNK = 1 << 11


@dataclass(frozen=True)
class QueryPairSet:
    """Candidate pairs, optionally labeled (1 = connected later, 0 = not)."""

    u: np.ndarray
    v: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        u = np.ascontiguousarray(self.u, dtype=np.int64)
        v = np.ascontiguousarray(self.v, dtype=np.int64)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("u and v must be 1-d arrays of equal length")
        if np.any(u == v):
            raise ValueError("query pairs must join distinct nodes")
        if len(u) and min(u.min(), v.min()) < 0:
            raise ValueError("node ids must be non-negative")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if self.labels is not None:
            labels = np.ascontiguousarray(self.labels, dtype=np.int8)
            if labels.shape != u.shape:
                raise ValueError("labels must align one-to-one with pairs")
            if not np.isin(labels, (0, 1)).all():
                raise ValueError("labels must be 0 or 1")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.u)

    @classmethod
    def from_pairs(cls, pairs, labels=None) -> "QueryPairSet":
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1], labels)

    def check_bounds(self, n: int) -> None:
        if len(self) and max(self.u.max(), self.v.max()) >= n:
            raise ValueError(f"pair node id out of range for {n} nodes")


def score_pa(deg: np.ndarray, pairs: QueryPairSet, epsilon_pa: float = 0.0) -> np.ndarray:
    """Popularity score ``k_u + k_v + epsilon_pa * sqrt(k_u * k_v)``.

    ``epsilon_pa = 0`` gives the plain degree sum, which also ranks pairs
    with a zero-degree endpoint.
    """
    if epsilon_pa < 0:
        raise ValueError("epsilon_pa must be >= 0")
    pairs.check_bounds(len(deg))
    ku, kv = deg[pairs.u], deg[pairs.v]
    s = ku + kv
    if epsilon_pa:
        s = s + epsilon_pa * np.sqrt(ku * kv)
    return s


def _scale_columns(adj: sp.csr_matrix, col_weight: np.ndarray) -> sp.csr_matrix:
    out = adj.copy()
    out.data = out.data * col_weight[out.indices]
    return out


def _shared_neighbor_sum(adj, weighted, u, v):
    """Row-wise ``sum_w A_uw * A_vw * g(w)`` with ``weighted = A diag(g)``."""
    left = adj[u]
    right = weighted[v]
    return np.asarray(left.multiply(right).sum(axis=1)).ravel()


def _chunked(fn: Callable, pairs: QueryPairSet, chunk: int, workers: int = 1) -> np.ndarray:
    n = len(pairs)
    out = np.zeros(n)
    bounds = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]

    def run(b):
        lo, hi = b
        out[lo:hi] = fn(pairs.u[lo:hi], pairs.v[lo:hi])

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, bounds))
    else:
        for b in bounds:
            run(b)
    return out


def _path2(adj, pairs, node_weight, workers=1):
    adj = sp.csr_matrix(adj)
    pairs.check_bounds(adj.shape[0])
    weighted = _scale_columns(adj, node_weight)
    return _chunked(lambda u, v: _shared_neighbor_sum(adj, weighted, u, v),
                    pairs, PAIR_CHUNK, workers)


def score_cn(adj: sp.csr_matrix, pairs: QueryPairSet, workers: int = 1) -> np.ndarray:
    """Weighted common-neighbour count ``(A^2)_uv``."""
    return _path2(adj, pairs, np.ones(adj.shape[0]), workers)


def adamic_adar_weights(deg: np.ndarray) -> np.ndarray:
    """``1/ln k`` per node, and 0 where ``k <= 1`` (the log would be <= 0)."""
    w = np.zeros(len(deg))
    ok = deg > 1
    w[ok] = 1.0 / np.log(deg[ok])
    return w


def score_aa(adj: sp.csr_matrix, deg: np.ndarray, pairs: QueryPairSet,
             workers: int = 1) -> np.ndarray:
    """Adamic-Adar: ``sum_w A_uw A_vw / ln k_w`` over shared neighbours with ``k_w > 1``."""
    return _path2(adj, pairs, adamic_adar_weights(deg), workers)


def score_ra(adj: sp.csr_matrix, deg: np.ndarray, pairs: QueryPairSet,
             workers: int = 1) -> np.ndarray:
    """Resource allocation: ``sum_w A_uw A_vw / k_w``."""
    w = np.zeros(len(deg))
    ok = deg > 0
    w[ok] = 1.0 / deg[ok]
    return _path2(adj, pairs, w, workers)


def _drop_matching_columns(m: sp.csr_matrix, cols: np.ndarray) -> sp.csr_matrix:
    """Zero the entry ``(r, cols[r])`` of every row ``r``, if stored."""
    row_of = np.repeat(np.arange(m.shape[0]), np.diff(m.indptr))
    hit = m.indices == cols[row_of]
    if hit.any():
        m = m.copy()
        m.data[hit] = 0.0
        m.eliminate_zeros()
    return m


def score_l3(adj: sp.csr_matrix, deg: np.ndarray, pairs: QueryPairSet,
             workers: int = 1) -> np.ndarray:
    """Degree-normalized length-3 paths.

    ``s_ij = sum_{a,b} A_ia A_ab A_bj / sqrt(k_a k_b)`` over intermediate nodes
    ``a != j`` and ``b != i``, so walks passing back through an endpoint do
    not count.
    """
    adj = sp.csr_matrix(adj)
    pairs.check_bounds(adj.shape[0])
    inv_sqrt = np.zeros(len(deg))
    ok = deg > 0
    inv_sqrt[ok] = 1.0 / np.sqrt(deg[ok])
    scaled = _scale_columns(adj, inv_sqrt)

    def run(u, v):
        first = _drop_matching_columns(scaled[u], v)
        two_hop = _drop_matching_columns(sp.csr_matrix(first @ scaled), u)
        return np.asarray(two_hop.multiply(adj[v]).sum(axis=1)).ravel()

    return _chunked(run, pairs, L3_CHUNK, workers)


METHODS = ("pa", "cn", "aa", "ra", "l3")


def score_batch(method: str, adj: sp.csr_matrix, deg: np.ndarray, pairs: QueryPairSet,
                epsilon_pa: float = 0.0, workers: int = 1) -> np.ndarray:
    """Dispatch to one of :data:`METHODS`.

    Parallel workers write into fixed slices of the output, so the result
    does not depend on ``workers``.
    """
    if method == "pa":
        return score_pa(deg, pairs, epsilon_pa)
    if method == "cn":
        return score_cn(adj, pairs, workers)
    if method == "aa":
        return score_aa(adj, deg, pairs, workers)
    if method == "ra":
        return score_ra(adj, deg, pairs, workers)
    if method == "l3":
        return score_l3(adj, deg, pairs, workers)
    raise ValueError(f"unknown scoring method {method!r}; expected one of {METHODS}")
