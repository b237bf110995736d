"""Slow, obviously-correct reference implementations used only by the tests.

They work from plain Python dicts built straight off the edge records and
never touch scipy or the package's sparse code paths.
"""
import math
from collections import defaultdict


class Neighbours(dict):
    """{node: {neighbour: summed weight}} with memoized degrees."""

    def __init__(self):
        super().__init__()
        self.deg = {}


def weight_dict(edges, weights=None):
    nbrs = Neighbours()
    for idx, (a, b) in enumerate(edges):
        w = 1.0 if weights is None else float(weights[idx])
        if w == 0:
            continue
        nbrs.setdefault(a, defaultdict(float))[b] += w
        nbrs.setdefault(b, defaultdict(float))[a] += w
    return nbrs


def degree(nbrs, i):
    if i not in nbrs.deg:
        nbrs.deg[i] = sum(nbrs[i].values()) if i in nbrs else 0.0
    return nbrs.deg[i]


def cn(nbrs, i, j):
    return sum(nbrs[i][u] * nbrs[j][u] for u in set(nbrs.get(i, {})) & set(nbrs.get(j, {})))


def aa(nbrs, i, j):
    total = 0.0
    for u in set(nbrs.get(i, {})) & set(nbrs.get(j, {})):
        k = degree(nbrs, u)
        if k > 1:
            total += nbrs[i][u] * nbrs[j][u] / math.log(k)
    return total


def ra(nbrs, i, j):
    total = 0.0
    for u in set(nbrs.get(i, {})) & set(nbrs.get(j, {})):
        total += nbrs[i][u] * nbrs[j][u] / degree(nbrs, u)
    return total


def l3(nbrs, i, j):
    """Walks i-a-b-j with a != j and b != i, each weighted by 1/sqrt(k_a k_b)."""
    total = 0.0
    for a, w_ia in nbrs.get(i, {}).items():
        if a == j:
            continue
        for b, w_ab in nbrs[a].items():
            if b == i or j not in nbrs[b]:
                continue
            total += w_ia * w_ab * nbrs[b][j] / math.sqrt(degree(nbrs, a) * degree(nbrs, b))
    return total


def pa(nbrs, i, j, eps=0.0):
    ki, kj = degree(nbrs, i), degree(nbrs, j)
    return ki + kj + eps * math.sqrt(ki * kj)


def auc_pairwise(scores, labels):
    pos = [s for s, y in zip(scores, labels) if y]
    neg = [s for s, y in zip(scores, labels) if not y]
    wins = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                wins += 1.0
            elif p == n:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def erdos_renyi(n, p, rng):
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
