"""Time Adamic-Adar scoring of random pairs on a large synthetic graph."""
import argparse
import resource
import time

import numpy as np

from templink.graph import build_adjacency, degrees
from templink.scorers import QueryPairSet, score_batch
from templink.synthgen import GrowthParams, generate_pa_network


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=64000)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--pairs", type=int, default=1_000_000)
    ap.add_argument("--method", default="aa")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    t = time.perf_counter()
    edges = generate_pa_network(GrowthParams(args.n, args.m, 0.0, 42))
    print(f"generate   {time.perf_counter() - t:6.2f} s  ({len(edges)} edges)")
    rng = np.random.default_rng(0)
    u = rng.integers(0, args.n, 2 * args.pairs)
    v = rng.integers(0, args.n, 2 * args.pairs)
    keep = u != v
    pairs = QueryPairSet(u[keep][: args.pairs], v[keep][: args.pairs])

    t = time.perf_counter()
    adj = build_adjacency(edges)
    k = degrees(adj)
    print(f"adjacency  {time.perf_counter() - t:6.2f} s")
    t = time.perf_counter()
    s = score_batch(args.method, adj, k, pairs, workers=args.workers)
    print(f"{args.method:<10} {time.perf_counter() - t:6.2f} s  ({len(s)} pairs, {np.count_nonzero(s)} nonzero)")
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(f"peak RSS   {rss:6.0f} MB")


if __name__ == "__main__":
    main()
