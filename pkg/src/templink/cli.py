"""Command-line interface.

    templink generate  --n N --m M --b B --seed S --out g.edges [--pairs split.pairs --t1 T1 --t2 T2]
    templink inspect   --edges g.edges [--pairs p] [--t1 T] [--kmin K] [--hist-out h.txt]
    templink score     --edges g.edges --pairs p --method aa [--theta t0,t1,t2,t3] --out s.txt
    templink auc       (--scores s.txt | --aa aa.txt --pa pa.txt --eps E) --labels p
    templink optimize  --edges g.edges --pairs p --mode epsilon|theta [--grid-step 0.01] --out trace.txt

Every command first echoes its effective configuration as ``# key = value``
lines.  A ``--config`` file of ``key = value`` lines supplies defaults that
explicit flags override.
"""
from __future__ import annotations

import argparse
import sys


from . import analysis, evaluation, files, synthgen
from .graph import IngestError, TimeWeightParams, build_adjacency, degrees, ingest_edges, write_edges
from .scorers import METHODS, score_batch


class UsageError(ValueError):
    """Invalid parameters; exit status 2."""


def _float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _theta(text):
    if text is None or text == "uniform":
        return None
    try:
        return TimeWeightParams.parse(text)
    except ValueError as exc:
        raise UsageError(f"--theta: {exc}") from None


def read_config(path) -> dict:
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (x.strip() for x in s.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


def _load_edges(args):
    edges = ingest_edges(args.edges, args.nodes)
    if getattr(args, "t1", None) is not None:
        edges = edges.until(args.t1)
    return edges


def _echo(args):
    for key in sorted(vars(args)):
        if key in ("func", "config"):
            continue
        print(f"# {key} = {getattr(args, key)}")


def cmd_generate(args):
    try:
        params = synthgen.GrowthParams(args.n, args.m, args.b, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    edges = synthgen.generate_pa_network(params)
    write_edges(edges, args.out)
    print(f"edges {len(edges)}")
    print(f"nodes {edges.node_count}")
    if args.pairs:
        if args.t1 is None or args.t2 is None:
            raise UsageError("--pairs needs --t1 and --t2")
        split = synthgen.make_benchmark(edges, args.t1, args.t2, args.n_pairs, args.cap,
                                        args.pair_seed)
        files.write_pairs(split.pairs, args.pairs, header=split.header())
        print(f"pairs {split.n_pairs}")
        print(f"positives {split.n_positive}")


def cmd_inspect(args):
    edges = _load_edges(args)
    adj = build_adjacency(edges, _theta(args.theta))
    deg = degrees(adj)
    print(f"nodes {edges.node_count}")
    print(f"edges {len(edges)}")
    print(f"linked_pairs {adj.nnz // 2}")
    if args.pairs:
        pairs = files.read_pairs(args.pairs)
        c = evaluation.classify_pairs(deg, pairs)
        print(f"(k=0,k=0): {c.zero_zero}")
        print(f"(k=0,k>0): {c.zero_pos}")
        print(f"(k>0,k>0): {c.pos_pos}")
    hist = analysis.degree_histogram(deg, args.binning)
    try:
        fit = analysis.fit_power_law(hist, args.kmin)
    except ValueError as exc:
        fit = None
        print(f"gamma unavailable: {exc}")
    else:
        print(f"gamma {fit.gamma:.4f} kmin {fit.k_min:g} r2 {fit.r_squared:.4f} "
              f"points {fit.points_used}")
    if args.hist_out:
        files.write_text(args.hist_out, analysis.format_histogram(hist, fit))


def _scores_for(args, edges, pairs, method, theta):
    adj = build_adjacency(edges, theta)
    pairs.check_bounds(adj.shape[0])
    return score_batch(method, adj, degrees(adj), pairs, args.eps_pa, args.workers)


def cmd_score(args):
    edges = _load_edges(args)
    pairs = files.read_pairs(args.pairs)
    scores = _scores_for(args, edges, pairs, args.method, _theta(args.theta))
    header = f"method={args.method} theta={args.theta} eps_pa={args.eps_pa:g}"
    files.write_scores(pairs, scores, args.out, header)
    print(f"scored {len(pairs)}")


def cmd_auc(args):
    labeled = files.read_pairs(args.labels)
    if labeled.labels is None:
        raise UsageError(f"{args.labels} carries no labels")
    if args.scores:
        if args.aa or args.pa:
            raise UsageError("give either --scores or --aa/--pa")
        pairs, scores = files.read_scores(args.scores)
        files.check_aligned(pairs, labeled, "score and label files")
    else:
        if not (args.aa and args.pa):
            raise UsageError("need --scores, or both --aa and --pa")
        pa_pairs, s_pa = files.read_scores(args.pa)
        aa_pairs, s_aa = files.read_scores(args.aa)
        files.check_aligned(aa_pairs, pa_pairs, "AA and PA score files")
        files.check_aligned(pa_pairs, labeled, "score and label files")
        scores = evaluation.combine(evaluation.normalize_scores(s_aa),
                                    evaluation.normalize_scores(s_pa), args.eps)
    value = evaluation.auc(scores, labeled.labels)
    print(f"positives {int(labeled.labels.sum())}")
    print(f"negatives {int(len(labeled) - labeled.labels.sum())}")
    print(f"auc {value:.5f}")


def cmd_optimize(args):
    edges = _load_edges(args)
    pairs = files.read_pairs(args.pairs)
    if pairs.labels is None:
        raise UsageError(f"{args.pairs} carries no labels")
    if args.mode == "epsilon":
        theta = _theta(args.theta)
        s_aa = _scores_for(args, edges, pairs, "aa", theta)
        s_pa = _scores_for(args, edges, pairs, "pa", theta)
        result = evaluation.optimize_epsilon(s_aa, s_pa, pairs.labels, args.grid_step)
        print(f"best_eps {result.best_epsilon:g}")
        print(f"auc {result.best_auc:.5f}")
        trace = result.trace
    else:
        grids = [args.grid_theta0, args.grid_theta1, args.grid_theta2, args.grid_theta3]
        try:
            result = evaluation.optimize_theta(edges, pairs, grids, method=args.method,
                                               epsilon_pa=args.eps_pa)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print("best_theta " + ",".join(f"{p:g}" for p in result.best_params.astuple()))
        print(f"auc {result.best_auc:.5f}")
        print(f"evaluations {result.evaluations}")
        print(f"passes {result.passes}")
        trace = result.trace
    if args.out:
        files.write_text(args.out, evaluation.format_trace(trace))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="templink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, edges=True):
        p.add_argument("--config", help="key = value defaults file")
        if edges:
            p.add_argument("--edges", required=True, help="edge file (u v t)")
            p.add_argument("--nodes", type=int, help="node count (default: 1 + max id)")
            p.add_argument("--t1", type=float, help="only use edges with t <= T1")
            p.add_argument("--theta", default="uniform",
                           help="time weight t0,t1,t2,t3 or 'uniform'")
            p.add_argument("--eps-pa", type=float, default=0.0, dest="eps_pa")
            p.add_argument("--workers", type=int, default=1)
        return p

    p = common(sub.add_parser("generate", help="grow a preferential-attachment network"), False)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.add_argument("--pairs", help="also write a labeled benchmark split here")
    p.add_argument("--t1", type=float)
    p.add_argument("--t2", type=float)
    p.add_argument("--n-pairs", type=int, default=100000, dest="n_pairs")
    p.add_argument("--cap", type=float, default=0.015, help="positive fraction top-up cap")
    p.add_argument("--pair-seed", type=int, default=42, dest="pair_seed")
    p.set_defaults(func=cmd_generate)

    p = common(sub.add_parser("inspect", help="sizes, degree categories, power-law fit"))
    p.add_argument("--pairs")
    p.add_argument("--kmin", type=float)
    p.add_argument("--binning", choices=("log", "linear"), default="log")
    p.add_argument("--hist-out", dest="hist_out")
    p.set_defaults(func=cmd_inspect)

    p = common(sub.add_parser("score", help="score query pairs"))
    p.add_argument("--pairs", required=True)
    p.add_argument("--method", choices=METHODS, default="pa")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score)

    p = common(sub.add_parser("auc", help="combine score files and compute AUC"), False)
    p.add_argument("--scores")
    p.add_argument("--aa")
    p.add_argument("--pa")
    p.add_argument("--eps", type=float, default=0.92)
    p.add_argument("--labels", required=True, help="pairs file with labels")
    p.set_defaults(func=cmd_auc)

    p = common(sub.add_parser("optimize", help="grid search of epsilon or theta"))
    p.add_argument("--pairs", required=True, help="pairs file with labels")
    p.add_argument("--mode", choices=("epsilon", "theta"), default="epsilon")
    p.add_argument("--grid-step", type=float, default=0.01, dest="grid_step")
    p.add_argument("--method", choices=METHODS, default="pa")
    defaults = evaluation.DEFAULT_THETA_GRIDS
    for i in range(4):
        p.add_argument(f"--grid-theta{i}", type=_float_list, dest=f"grid_theta{i}",
                       default=",".join(f"{x:g}" for x in defaults[i]))
    p.add_argument("--out", help="trace file")
    p.set_defaults(func=cmd_optimize)
    parser.commands = dict(sub.choices)
    return parser


def _apply_config(subparser, cfg):
    known = {a.dest for a in subparser._actions}
    unknown = sorted(set(cfg) - known)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for action in subparser._actions:
        if action.dest in cfg:
            action.required = False
    subparser.set_defaults(**cfg)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] in parser.commands:
            pre = argparse.ArgumentParser(add_help=False)
            pre.add_argument("--config")
            config = pre.parse_known_args(argv[1:])[0].config
            if config:
                _apply_config(parser.commands[argv[0]], read_config(config))
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        _echo(args)
        args.func(args)
    except UsageError as exc:
        print(f"templink: error: {exc}", file=sys.stderr)
        return 2
    except (IngestError, ValueError, OSError) as exc:
        print(f"templink: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
