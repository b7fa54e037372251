"""Percentage-improvement histograms for ER, graph SBM and 4-uniform SBM.

The default grids are the scaled ones used by the test suite. ``--paper-scale``
switches to n=100 graphs and n=60 hypergraphs with 100 instances each; expect
that to take hours.
"""
import argparse
import json
from dataclasses import replace
from pathlib import Path

from htcut.eigen import SolverConfig
from htcut.experiments import (BenchSummary, default_specs, histogram_csv, records_csv, run_bench,
                               spec_grid)
from htcut.generators import Family


def paper_specs(family, seed):
    base = default_specs(family, seed)[0]
    if family is Family.ER:
        return spec_grid(replace(base, n=100), [0.2, 0.4, 0.6], [0.0])
    if family is Family.SBM:
        return spec_grid(replace(base, n=100, blocks=(50, 50)), [0.3, 0.5], [0.01, 0.05])
    # about 500 intra hyperedges out of 2*C(30,4)
    return spec_grid(replace(base, n=60, blocks=(30, 30)), [0.009], [0.0002, 0.0005])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("families", nargs="*", default=["er", "sbm", "hysbm"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instances", type=int)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--paper-scale", action="store_true")
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in args.families:
        fam = Family(name)
        specs = paper_specs(fam, args.seed) if args.paper_scale else default_specs(fam, args.seed)
        count = args.instances or (100 if args.paper_scale else {"er": 50, "sbm": 50, "hysbm": 30}[name])
        records = run_bench(specs, count, SolverConfig(), args.jobs)
        (outdir / f"{name}.csv").write_text(records_csv(records))
        (outdir / f"{name}_hist.csv").write_text(histogram_csv(records))
        print(name, json.dumps(BenchSummary.of(records).__dict__))


if __name__ == "__main__":
    main()
