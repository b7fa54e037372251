"""``htcut`` command line.

Exit codes: 0 ok, 1 usage or input error, 2 numerical failure, 3 verification
failure. The default seed is taken from ``HTCUT_SEED`` when set.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import experiments as ex
from .eigen import SolverConfig, SolverError
from .generators import (FIXTURES, Family, GenSpec, gen_cockroach, gen_er, gen_random_uniform,
                         gen_sbm_graph, gen_sbm_hypergraph, fixture)
from .hypergraph import HypergraphFormatError, format_hypergraph, read_hypergraph
from .partition import Method, oracle_min_ratio_cut, score_partition, sign_partition
from .tensor import LaplacianKind

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("HTCUT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"HTCUT_SEED must be an integer, got {raw!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _sibling(out: str | None, suffix: str) -> str | None:
    if out is None or out == "-":
        return None
    p = Path(out)
    return str(p.with_name(p.stem + suffix + p.suffix))


# ---------------------------------------------------------------- commands

def cmd_partition(args) -> int:
    h = read_hypergraph(args.input)
    kind = LaplacianKind.NORMALIZED if args.normalized else LaplacianKind.UNNORMALIZED
    cfg = SolverConfig(restarts=args.restarts, seed=args.seed)
    method = Method(args.method)
    if method is Method.SCORE:
        res = score_partition(h, args.p, kind, cfg)
    elif method is Method.SIGN:
        if args.p != 2:
            raise UsageError("the sign method produces exactly two clusters; use -p 2")
        res = sign_partition(h, kind, cfg)
    else:
        res = oracle_min_ratio_cut(h, args.p)
    payload = res.to_json(h)
    payload["input"] = str(args.input)
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return EXIT_OK


def _build_generated(args):
    fam = Family(args.family)
    if fam is Family.ER:
        return gen_er(args.n, args.p, args.seed)
    if fam is Family.SBM:
        return gen_sbm_graph(args.n1, args.n2, args.p, args.q, args.seed)
    if fam is Family.HYSBM:
        return gen_sbm_hypergraph(args.n1, args.n2, args.k, args.p, args.q, args.seed)
    if fam is Family.COCKROACH:
        return gen_cockroach(args.t)
    if fam is Family.RANDOM:
        return gen_random_uniform(args.n, args.k, args.m, args.seed, weighted=args.weighted)
    return fixture(args.name)


def cmd_generate(args) -> int:
    h = _build_generated(args)
    _emit(format_hypergraph(h, comment=f"htcut generate {args.family} seed={args.seed}"), args.output)
    return EXIT_OK


def cmd_bench_cockroach(args) -> int:
    if args.t_min < 2 or args.t_min > args.t_max:
        raise UsageError(f"need 2 <= t-min <= t-max, got {args.t_min}..{args.t_max}")
    rows = ex.parallel_map(ex.cockroach_row, range(args.t_min, args.t_max + 1), args.jobs)
    _emit(ex.to_csv(["t", "r_sign", "r_score", "pi"], [(r.t, r.r_sign, r.r_score, r.pi) for r in rows]),
          args.output)
    bad = [msg for r in rows for msg in r.mismatches()]
    for msg in bad:
        print(f"mismatch: {msg}", file=sys.stderr)
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_bench_random(args) -> int:
    fam = Family(args.family)
    base = replace(ex.default_specs(fam, args.seed)[0], seed=args.seed)
    if args.n is not None:
        if fam is not Family.ER:
            raise UsageError("--n applies to er; use --n1/--n2 for block models")
        base = replace(base, n=args.n)
    if args.n1 is not None or args.n2 is not None:
        if fam is Family.ER:
            raise UsageError("--n1/--n2 apply to block models")
        blocks = (args.n1 or base.blocks[0], args.n2 or base.blocks[1])
        base = replace(base, n=sum(blocks), blocks=blocks)
    if args.k is not None:
        if fam is not Family.HYSBM:
            raise UsageError("--k applies to hysbm only")
        base = replace(base, k=args.k)
    defaults = ex.default_specs(fam, args.seed)
    ps = args.p or sorted({s.p_intra for s in defaults})
    qs = args.q or sorted({s.q_inter for s in defaults})
    specs = ex.spec_grid(base, ps, qs)
    cfg = SolverConfig(restarts=args.restarts)
    records = ex.run_bench(specs, args.instances, cfg, args.jobs)
    _emit(ex.records_csv(records), args.output)
    hist = args.hist or _sibling(args.output, "_hist")
    if hist:
        Path(hist).write_text(ex.histogram_csv(records, args.bins), encoding="utf-8", newline="\n")
    print(json.dumps(ex.summary_dict(records)), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    fn = ex.VERIFIERS[args.property]
    kwargs = {"trials": args.trials, "seed": args.seed}
    if args.property in ("bound", "oracle"):
        kwargs["k"] = args.k if args.k is not None else (4 if args.property == "bound" else 3)
    if args.trials is None:
        kwargs.pop("trials")
    rep = fn(**kwargs)
    status = "PASS" if rep.passed else "FAIL"
    print(f"{'property':<12} {'trials':>6} {'failures':>8} {'worst':>12}  status")
    print(f"{rep.name:<12} {rep.trials:>6} {len(rep.failures):>8} {rep.worst:>12.4g}  {status}")
    if rep.passed:
        return EXIT_OK
    label, h = rep.minimal_failure()
    dump = Path(args.dump_dir) / f"verify_{rep.name}_failure.hg"
    dump.write_text(format_hypergraph(h, comment=f"{rep.name} violation ({label})"), encoding="utf-8")
    print(f"minimal failing instance ({label}) written to {dump}", file=sys.stderr)
    return EXIT_VERIFY


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    ap = argparse.ArgumentParser(prog="htcut", description="Tensor-spectral hypergraph partitioning.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition a .hg file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-p", type=int, default=2, help="number of clusters")
    p.add_argument("--method", choices=[m.value for m in Method], default="score")
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--restarts", type=int, default=SolverConfig.restarts)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_partition)

    g = sub.add_parser("generate", help="write a generated instance as .hg")
    g.add_argument("family", choices=[f.value for f in Family])
    g.add_argument("--n", type=int)
    g.add_argument("--n1", type=int)
    g.add_argument("--n2", type=int)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--m", type=int)
    g.add_argument("--p", type=float, default=0.0)
    g.add_argument("--q", type=float, default=0.0)
    g.add_argument("--t", type=int)
    g.add_argument("--name", choices=FIXTURES)
    g.add_argument("--weighted", action="store_true")
    g.add_argument("--seed", type=int, default=seed)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="run an experiment and write CSV")
    bsub = b.add_subparsers(dest="family", required=True)
    c = bsub.add_parser("cockroach")
    c.add_argument("--t-min", type=int, default=3)
    c.add_argument("--t-max", type=int, default=20)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_bench_cockroach)
    for fam in ("er", "sbm", "hysbm"):
        r = bsub.add_parser(fam)
        r.add_argument("--instances", type=int, default=50)
        r.add_argument("--seed", type=int, default=seed)
        r.add_argument("--n", type=int, help="node count (er)")
        r.add_argument("--n1", type=int)
        r.add_argument("--n2", type=int)
        r.add_argument("--k", type=int)
        r.add_argument("--p", type=float, nargs="+", help="edge / intra-block probabilities")
        r.add_argument("--q", type=float, nargs="+", help="inter-block probabilities")
        r.add_argument("--restarts", type=int, default=SolverConfig.restarts)
        r.add_argument("--bins", type=int, default=20)
        r.add_argument("--hist", help="histogram CSV path (default: <output>_hist.csv)")
        r.add_argument("--jobs", type=int, default=1)
        r.add_argument("-o", "--output")
        r.set_defaults(func=cmd_bench_random)

    v = sub.add_parser("verify", help="check a property over a seeded corpus")
    v.add_argument("property", choices=sorted(ex.VERIFIERS))
    v.add_argument("--trials", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--seed", type=int, default=seed)
    v.add_argument("--dump-dir", default=".")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except UsageError as err:
        print(f"htcut: {err}", file=sys.stderr)
        return EXIT_INPUT
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(f"htcut: no such file: {err.filename}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as err:
        print(f"htcut: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, HypergraphFormatError, ValueError, TypeError) as err:
        print(f"htcut: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
