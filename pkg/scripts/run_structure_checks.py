#!/usr/bin/env python3
"""Structural experiment sweep: inscribed balls and log-concavity families.

Writes one JSON report per check to stdout (one line each) or to --out.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lrhive.experiments import inscribed_ball_check, logconcavity_check
from lrhive.partitions import triple

FAMILIES = [
    (triple([2, 1, 0], [2, 1, 0], [3, 2, 1]), 3, Fraction(1, 2)),
    (triple([3, 1, 0], [2, 2, 0], [4, 3, 1]), 3, Fraction(1, 2)),
    (triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1]), 3, Fraction(1, 2)),
    (triple([4, 3, 2, 1, 0], [4, 3, 2, 1, 0], [6, 5, 4, 3, 2]), 3, Fraction(1, 2)),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=6, help="largest rank for ball checks")
    ap.add_argument("--eps-inv", type=int, default=1)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    reports = []
    for n in range(3, args.n_max + 1):
        rep = inscribed_ball_check(n, args.eps_inv)
        rep["check"] = "inscribed_ball"
        reports.append(rep)
    for k, (t, scale, theta) in enumerate(FAMILIES):
        rep = logconcavity_check(t, t.scaled(scale), theta, seed=args.seed + k, pairs=args.pairs)
        rep["check"] = "logconcavity"
        reports.append(rep)

    lines = "\n".join(json.dumps(r, sort_keys=True) for r in reports)
    if args.out:
        args.out.write_text(lines + "\n")
    else:
        print(lines)
    bad = [r for r in reports if r.get("structural_pass") is False or r.get("positive") is False]
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
