#!/usr/bin/env python3
"""Sweep the shifted-cone fraction over gamma and emit JSON plus optional CSV."""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lrhive.experiments import shifted_fraction_experiment


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--gammas", type=int, nargs="+", default=None,
                    help="explicit gamma values; default multiples of n^5")
    ap.add_argument("--multipliers", type=float, nargs="+", default=[5, 10, 25, 50, 100])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", type=Path, default=None, help="per-trial CSV output")
    args = ap.parse_args()

    gammas = args.gammas or [int(m * args.n**5) for m in args.multipliers]
    trail = open(args.csv, "w", newline="") if args.csv else None
    try:
        for gamma in gammas:
            rep = shifted_fraction_experiment(
                args.n, gamma, args.trials, seed=args.seed, trail=trail
            )
            print(json.dumps(rep, sort_keys=True))
    finally:
        if trail:
            trail.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
