"""Run every property check over its seeded corpus and print a summary table."""
import argparse
import sys

from htcut.experiments import VERIFIERS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ok = True
    print(f"{'property':<12} {'trials':>6} {'failures':>8} {'worst':>12}")
    for name, fn in VERIFIERS.items():
        rep = fn(seed=args.seed)
        ok &= rep.passed
        print(f"{name:<12} {rep.trials:>6} {len(rep.failures):>8} {rep.worst:>12.4g}")
    sys.exit(0 if ok else 3)


if __name__ == "__main__":
    main()
