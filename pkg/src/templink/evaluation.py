"""Score normalization, linear combination, AUC and the grid searches."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .graph import TemporalEdgeList, TimeWeightParams, build_adjacency, degrees, normalize_times
from .scorers import QueryPairSet, score_batch

__all__ = [
    "CategoryCounts",
    "EvaluationReport",
    "EpsilonSearch",
    "ThetaSearch",
    "normalize_scores",
    "combine",
    "auc",
    "classify_pairs",
    "evaluate",
    "epsilon_grid",
    "optimize_epsilon",
    "optimize_theta",
    "format_trace",
]


class CategoryCounts(NamedTuple):
    """Query pairs split by endpoint degree: both zero, one zero, none zero."""

    zero_zero: int
    zero_pos: int
    pos_pos: int


@dataclass
class EvaluationReport:
    auc: float
    positives: int
    negatives: int
    category_counts: CategoryCounts


def normalize_scores(s) -> np.ndarray:
    """Min-max scale to [0, 1]; a constant vector maps to all zeros."""
    s = np.asarray(s, dtype=np.float64)
    if s.size == 0:
        raise ValueError("cannot normalize an empty score vector")
    lo, hi = s.min(), s.max()
    if hi == lo:
        return np.zeros_like(s)
    return (s - lo) / (hi - lo)


def combine(s_aa, s_pa, epsilon: float) -> np.ndarray:
    """``epsilon * s_aa + (1 - epsilon) * s_pa`` on already-normalized vectors."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    s_aa = np.asarray(s_aa, dtype=np.float64)
    s_pa = np.asarray(s_pa, dtype=np.float64)
    if s_aa.shape != s_pa.shape:
        raise ValueError(f"score length mismatch: {s_aa.shape} vs {s_pa.shape}")
    return epsilon * s_aa + (1.0 - epsilon) * s_pa


def auc(scores, labels) -> float:
    """Mann-Whitney AUC: P(positive outranks negative), ties count one half.

    Computed from average ranks, O(M log M).
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape:
        raise ValueError("scores and labels must align")
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs at least one positive and one negative label")
    ranks = rankdata(scores, method="average")
    # twice the rank sum is an exact integer, so the numerator is exact
    u_stat = (ranks[labels].sum() * 2 - n_pos * (n_pos + 1)) / 2
    return float(u_stat / (n_pos * n_neg))


def classify_pairs(deg: np.ndarray, pairs: QueryPairSet) -> CategoryCounts:
    pairs.check_bounds(len(deg))
    a = deg[pairs.u] > 0
    b = deg[pairs.v] > 0
    both = int(np.count_nonzero(a & b))
    neither = int(np.count_nonzero(~a & ~b))
    return CategoryCounts(neither, len(pairs) - both - neither, both)


def evaluate(scores, pairs: QueryPairSet, deg: np.ndarray) -> EvaluationReport:
    if pairs.labels is None:
        raise ValueError("pairs carry no labels")
    pos = int(pairs.labels.sum())
    return EvaluationReport(auc(scores, pairs.labels), pos, len(pairs) - pos,
                            classify_pairs(deg, pairs))


@dataclass
class EpsilonSearch:
    best_epsilon: float
    best_auc: float
    trace: list = field(default_factory=list)


def epsilon_grid(step: float) -> np.ndarray:
    """``0, step, 2*step, ...`` up to and including 1."""
    if not 0.0 < step <= 0.5:
        raise ValueError("grid step must lie in (0, 0.5]")
    n = int(math.floor(1.0 / step + 1e-9))
    grid = [round(i * step, 12) for i in range(n + 1)]
    if grid[-1] < 1.0:
        grid.append(1.0)
    return np.array(grid)


def optimize_epsilon(s_aa, s_pa, labels, grid_step: float = 0.01) -> EpsilonSearch:
    """Grid search of the AA/PA mixing weight.

    Both score vectors are min-max normalized first.  Ties go to the
    smaller epsilon.
    """
    n_aa, n_pa = normalize_scores(s_aa), normalize_scores(s_pa)
    trace = []
    best_eps, best = None, -1.0
    for eps in epsilon_grid(grid_step):
        value = auc(combine(n_aa, n_pa, float(eps)), labels)
        trace.append((float(eps), value))
        if value > best:
            best_eps, best = float(eps), value
    return EpsilonSearch(best_eps, best, trace)


@dataclass
class ThetaSearch:
    best_params: TimeWeightParams
    best_auc: float
    trace: list = field(default_factory=list)
    passes: int = 0

    @property
    def evaluations(self) -> int:
        return len(self.trace)


DEFAULT_THETA_GRIDS = (
    (0.0, 0.25, 0.5, 1.0),
    (0.0, 0.25, 0.45, 0.5, 0.75, 1.0),
    (1.0, 2.0, 3.0, 4.0),
    (2, 4, 6, 8),
)


def optimize_theta(edges: TemporalEdgeList, pairs: QueryPairSet,
                   grids: Sequence[Sequence[float]] = DEFAULT_THETA_GRIDS,
                   method: str = "pa", start: Optional[Sequence[float]] = None,
                   order: Sequence[int] = (0, 1, 2, 3), max_passes: int = 10,
                   epsilon_pa: float = 0.0) -> ThetaSearch:
    """Greedy coordinate search of the time-weight parameters.

    Starting from ``start`` (default: the first value of each grid), each
    parameter in ``order`` is swept over its grid with the others held fixed
    and set to the best value found; passes repeat until nothing changes or
    ``max_passes`` is reached.  Every evaluation rebuilds the time-weighted
    adjacency, rescores ``pairs`` with ``method`` and takes the AUC.  Within
    a sweep ties keep the earliest grid value.  ``trace`` lists each distinct
    parameter tuple once, in evaluation order.
    """
    if pairs.labels is None:
        raise ValueError("pairs carry no labels")
    grids = [list(g) for g in grids]
    if len(grids) != 4 or not all(grids):
        raise ValueError("need four non-empty parameter grids")
    for g in grids[3]:
        TimeWeightParams(0.0, 0.0, 0.0, g)  # validates theta3 values
    edges = normalize_times(edges) if not edges.normalized else edges
    current = list(start) if start is not None else [g[0] for g in grids]
    cache: dict = {}
    trace = []

    def score_of(point):
        key = tuple(point)
        if key not in cache:
            params = TimeWeightParams(*key)
            adj = build_adjacency(edges, params)
            s = score_batch(method, adj, degrees(adj), pairs, epsilon_pa)
            cache[key] = auc(s, pairs.labels)
            trace.append((params.astuple(), cache[key]))
        return cache[key]

    best = score_of(current)
    passes = 0
    for passes in range(1, max_passes + 1):
        changed = False
        for p in order:
            choice, choice_auc = None, -1.0
            for value in grids[p]:
                a = score_of(current[:p] + [value] + current[p + 1:])
                if a > choice_auc:
                    choice, choice_auc = value, a
            if current[p] not in grids[p] and best >= choice_auc:
                continue
            if choice != current[p]:
                changed = True
                current[p] = choice
            best = choice_auc
        if not changed:
            break
    return ThetaSearch(TimeWeightParams(*current), best, trace, passes)


def format_trace(trace) -> str:
    """One line per evaluation: parameter values then the AUC to 6 decimals."""
    lines = []
    for params, value in trace:
        if not isinstance(params, tuple):
            params = (params,)
        lines.append(" ".join(f"{p:g}" for p in params) + f" {value:.6f}")
    return "\n".join(lines) + ("\n" if lines else "")
