"""Timestamped edge lists and the weighted adjacency built from them.

Edges are kept as three parallel numpy arrays (``u``, ``v``, ``t``) in file
order.  Repeated links between the same pair are preserved; when the
adjacency is built their weights are summed, so even the uniform weighting
produces entries larger than one.
"""
from __future__ import annotations

import io
import math
import os
import re
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Optional, Union

import numpy as np
import scipy.sparse as sp

__all__ = [
    "IngestError",
    "TemporalEdgeList",
    "TimeWeightParams",
    "ingest_edges",
    "write_edges",
    "normalize_times",
    "time_weight",
    "build_adjacency",
    "degrees",
    "common_neighbor_weight",
]

_RECORD = re.compile(
    rb"^\s*(\d+)\s+(\d+)\s+([+-]?(?:\d+(?:\.\d*)?|\.\d+))\s*$"
)


class IngestError(ValueError):
    """Raised for a malformed or inconsistent edge file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class TemporalEdgeList:
    """Ordered ``(u, v, t)`` records over nodes ``0..node_count-1``.

    ``normalized`` is set once the timestamps have been mapped to [0, 1].
    """

    u: np.ndarray
    v: np.ndarray
    t: np.ndarray
    node_count: int
    normalized: bool = False

    def __post_init__(self):
        u = np.ascontiguousarray(self.u, dtype=np.int64)
        v = np.ascontiguousarray(self.v, dtype=np.int64)
        t = np.ascontiguousarray(self.t, dtype=np.float64)
        if not (u.shape == v.shape == t.shape) or u.ndim != 1:
            raise ValueError("u, v and t must be 1-d arrays of equal length")
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        if len(u):
            if min(u.min(), v.min()) < 0:
                raise ValueError("node ids must be non-negative")
            if max(u.max(), v.max()) >= self.node_count:
                raise ValueError("node id out of range for node_count")
            if np.any(u == v):
                raise ValueError("self-loops are not allowed")
            if not np.all(np.isfinite(t)):
                raise ValueError("timestamps must be finite")
        for arr in (u, v, t):
            arr.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "t", t)

    def __len__(self) -> int:
        return len(self.u)

    @classmethod
    def from_records(cls, records: Iterable[tuple], node_count: Optional[int] = None):
        rows = list(records)
        if rows:
            u, v, t = (np.array(col) for col in zip(*rows))
        else:
            u = v = np.zeros(0, dtype=np.int64)
            t = np.zeros(0)
        if node_count is None:
            node_count = int(max(u.max(), v.max())) + 1 if rows else 0
        return cls(u, v, t, node_count)

    def until(self, cutoff: float) -> "TemporalEdgeList":
        """Edges with ``t <= cutoff``; the node universe is unchanged."""
        keep = self.t <= cutoff
        return TemporalEdgeList(self.u[keep], self.v[keep], self.t[keep],
                                self.node_count, self.normalized)

    def concat(self, other: "TemporalEdgeList") -> "TemporalEdgeList":
        if self.normalized != other.normalized:
            raise ValueError("cannot mix normalized and raw timestamps")
        return TemporalEdgeList(
            np.concatenate([self.u, other.u]),
            np.concatenate([self.v, other.v]),
            np.concatenate([self.t, other.t]),
            max(self.node_count, other.node_count),
            self.normalized,
        )


@dataclass(frozen=True)
class TimeWeightParams:
    """Parameters of the convex time weight ``theta0 + (theta2*(t - theta1))**theta3``."""

    theta0: float = 0.0
    theta1: float = 0.5
    theta2: float = 1.0
    theta3: int = 2

    def __post_init__(self):
        for name in ("theta0", "theta1", "theta2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.theta0 < 0:
            raise ValueError("theta0 must be >= 0")
        if not 0.0 <= self.theta1 <= 1.0:
            raise ValueError("theta1 must lie in [0, 1]")
        if self.theta2 < 0:
            raise ValueError("theta2 must be >= 0")
        theta3 = self.theta3
        if isinstance(theta3, float) and theta3.is_integer():
            theta3 = int(theta3)
        if not isinstance(theta3, (int, np.integer)) or theta3 <= 0 or theta3 % 2:
            raise ValueError("theta3 must be a positive even integer")
        object.__setattr__(self, "theta3", int(theta3))

    @classmethod
    def parse(cls, text: str) -> "TimeWeightParams":
        """Parse ``"t0,t1,t2,t3"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated values, got {text!r}")
        t0, t1, t2, t3 = (float(p) for p in parts)
        return cls(t0, t1, t2, t3)

    def astuple(self) -> tuple:
        return (self.theta0, self.theta1, self.theta2, self.theta3)


def _open_source(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, "rb"), True
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source), True
    return source, False


def ingest_edges(source: Union[str, os.PathLike, bytes, BinaryIO],
                 node_count: Optional[int] = None) -> TemporalEdgeList:
    """Read an edge file of ``u v t`` lines.

    ``source`` may be a path, raw bytes or a binary stream.  Blank lines and
    lines starting with ``#`` are skipped.  Duplicate pairs are kept in file
    order.  When ``node_count`` is omitted it is inferred as ``1 + max id``.

    Raises
    ------
    IngestError
        On a malformed line or self-loop (with its 1-based line number), or
        when an id is not below ``node_count``.
    """
    stream, owned = _open_source(source)
    us, vs, ts = [], [], []
    try:
        for lineno, raw in enumerate(stream, start=1):
            if isinstance(raw, str):
                raw = raw.encode()
            stripped = raw.strip()
            if not stripped or stripped.startswith(b"#"):
                continue
            m = _RECORD.match(raw)
            if m is None:
                raise IngestError(f"malformed record {stripped[:80]!r}", lineno)
            a, b = int(m.group(1)), int(m.group(2))
            if a == b:
                raise IngestError(f"self-loop on node {a}", lineno)
            if node_count is not None and max(a, b) >= node_count:
                raise IngestError(
                    f"node id {max(a, b)} >= node_count {node_count}", lineno)
            us.append(a)
            vs.append(b)
            ts.append(float(m.group(3)))
    finally:
        if owned:
            stream.close()
    if node_count is None:
        node_count = max(max(us), max(vs)) + 1 if us else 0
    return TemporalEdgeList(np.array(us, dtype=np.int64), np.array(vs, dtype=np.int64),
                            np.array(ts, dtype=np.float64), node_count)


def _format_time(t: float) -> str:
    if float(t).is_integer():
        return str(int(t))
    return repr(float(t))


def write_edges(edges: TemporalEdgeList, dest, header: Optional[str] = None) -> None:
    """Write ``edges`` in the ``u v t`` text format."""
    own = isinstance(dest, (str, os.PathLike))
    fh = open(dest, "w", encoding="ascii", newline="\n") if own else dest
    try:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for a, b, t in zip(edges.u.tolist(), edges.v.tolist(), edges.t.tolist()):
            fh.write(f"{a} {b} {_format_time(t)}\n")
    finally:
        if own:
            fh.close()


def normalize_times(edges: TemporalEdgeList) -> TemporalEdgeList:
    """Map timestamps affinely onto [0, 1] using the global min and max.

    A degenerate range (all timestamps equal) maps everything to 0.
    """
    if len(edges) == 0:
        raise ValueError("cannot normalize an empty edge list")
    lo, hi = edges.t.min(), edges.t.max()
    if hi == lo:
        t = np.zeros_like(edges.t)
    else:
        t = (edges.t - lo) / (hi - lo)
    return TemporalEdgeList(edges.u, edges.v, t, edges.node_count, normalized=True)


def time_weight(params: TimeWeightParams, t_norm):
    """Evaluate the link weight for normalized time(s) ``t_norm``."""
    t = np.asarray(t_norm, dtype=np.float64)
    w = params.theta0 + (params.theta2 * (t - params.theta1)) ** params.theta3
    return float(w) if w.ndim == 0 else w


def build_adjacency(edges: TemporalEdgeList,
                    params: Optional[TimeWeightParams] = None) -> sp.csr_matrix:
    """Symmetric weighted adjacency (CSR, sorted indices, zero diagonal).

    With ``params=None`` every occurrence of a pair adds 1.  Otherwise each
    occurrence adds ``time_weight(params, t~)`` where ``t~`` is the
    normalized timestamp (the list is normalized first unless it already is).
    Zero-weight occurrences are not stored.  Per-pair sums accumulate in
    file order.
    """
    n = edges.node_count
    if len(edges) == 0:
        return sp.csr_matrix((n, n), dtype=np.float64)
    if params is None:
        w = np.ones(len(edges))
    else:
        if not edges.normalized:
            edges = normalize_times(edges)
        w = np.asarray(time_weight(params, edges.t), dtype=np.float64)
    keep = w != 0
    lo = np.minimum(edges.u, edges.v)[keep]
    hi = np.maximum(edges.u, edges.v)[keep]
    w = w[keep]
    keys, inverse = np.unique(lo * n + hi, return_inverse=True)
    # bincount adds in input order, which fixes the summation order
    sums = np.bincount(inverse.ravel(), weights=w, minlength=len(keys))
    rows, cols = keys // n, keys % n
    coo = sp.coo_matrix(
        (np.concatenate([sums, sums]),
         (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(n, n),
    )
    adj = coo.tocsr()
    adj.sort_indices()
    return adj


def degrees(adj: sp.spmatrix) -> np.ndarray:
    """Weighted degree ``k_i = sum_j A_ij`` for every node."""
    adj = sp.csr_matrix(adj)
    out = np.zeros(adj.shape[0])
    row_ids = np.repeat(np.arange(adj.shape[0]), np.diff(adj.indptr))
    np.add.at(out, row_ids, adj.data)
    return out


def common_neighbor_weight(adj: sp.csr_matrix, i: int, j: int) -> float:
    """``(A^2)_ij`` computed by merging the two sorted adjacency rows."""
    ri = slice(adj.indptr[i], adj.indptr[i + 1])
    rj = slice(adj.indptr[j], adj.indptr[j + 1])
    _, ia, ja = np.intersect1d(adj.indices[ri], adj.indices[rj],
                               assume_unique=True, return_indices=True)
    return float(np.dot(adj.data[ri][ia], adj.data[rj][ja]))
