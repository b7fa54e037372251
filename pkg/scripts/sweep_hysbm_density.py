"""How the 4-uniform SBM comparison depends on the intra-block probability.

With dense blocks most inter-block hyperedges split 2+2; for even k such an
edge scores zero against a two-valued Fiedler vector, so score removal cannot
separate the blocks and isolates a node instead. This sweep makes the effect
visible.
"""
import argparse

from htcut.experiments import BenchSummary, default_specs, run_bench, spec_grid
from htcut.generators import Family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, nargs="+", default=[0.1, 0.15, 0.2, 0.3])
    ap.add_argument("--q", type=float, nargs="+", default=[0.005])
    ap.add_argument("--instances", type=int, default=10)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    base = default_specs(Family.HYSBM, args.seed)[0]
    print(f"{'p':>6} {'q':>7} {'median PI':>10} {'neg frac':>9} {'sign 1s':>8} {'score 1s':>9}")
    for spec in spec_grid(base, args.p, args.q):
        s = BenchSummary.of(run_bench([spec], args.instances, jobs=args.jobs))
        print(f"{spec.p_intra:>6} {spec.q_inter:>7} {s.median_pi:>10.1f} {s.negative_fraction:>9.2f} "
              f"{s.mean_sign_singletons:>8.2f} {s.mean_score_singletons:>9.2f}")


if __name__ == "__main__":
    main()
