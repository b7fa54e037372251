"""Sign vs score ratio-cut on cockroach graphs, t = 3..20.

Writes results/cockroach.csv and prints each row next to the closed form 2/t.
"""
import argparse
from pathlib import Path

from htcut.experiments import cockroach_row, to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-min", type=int, default=3)
    ap.add_argument("--t-max", type=int, default=20)
    ap.add_argument("--out", default="results/cockroach.csv")
    args = ap.parse_args()

    rows = [cockroach_row(t) for t in range(args.t_min, args.t_max + 1)]
    print(f"{'t':>3} {'r_sign':>8} {'r_score':>8} {'2/t':>8} {'4/(3t)':>8} {'PI':>7}")
    for r in rows:
        print(f"{r.t:>3} {r.r_sign:>8.4f} {r.r_score:>8.4f} {2 / r.t:>8.4f} {4 / (3 * r.t):>8.4f} {r.pi:>7.2f}")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(to_csv(["t", "r_sign", "r_score", "pi"], [(r.t, r.r_sign, r.r_score, r.pi) for r in rows]))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
