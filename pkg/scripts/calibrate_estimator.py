#!/usr/bin/env python3
"""Estimator calibration: randomized estimate vs. DFS oracle across seeds."""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lrhive.estimator import estimate_lrc
from lrhive.geometry import dikin_metric, facet_center, hive_body, rounding_transform
from lrhive.hive import exact_count
from lrhive.partitions import parse_partition, PartitionTriple

DEFAULT_TRIPLES = [
    "2,1,0/2,1,0/3,2,1",
    "9,6,3,0/9,6,3,0/15,12,6,3",
    "12,8,4,0/12,8,4,0/20,16,8,4",
    "20,15,10,5,0/20,15,10,5,0/30,25,20,15,10",
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--triples", nargs="+", default=DEFAULT_TRIPLES,
                    help="triples as LAMBDA/MU/NU with comma-separated parts")
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--delta", type=float, default=0.1)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--budget", type=int, default=50_000_000)
    args = ap.parse_args()

    for spec_text in args.triples:
        lam, mu, nu = (parse_partition(p) for p in spec_text.split("/"))
        t = PartitionTriple(lam, mu, nu)
        count = exact_count(t, budget=args.budget)
        q = hive_body(t, 2)
        rounding = None
        if q.dim > 0:
            rounding = rounding_transform(dikin_metric(q, facet_center(q)))
        rows = []
        for seed in range(args.seeds):
            rep = estimate_lrc(
                t, args.eps, args.delta, seed, rounding=rounding, exact_compare=False
            )
            rel = abs(rep.estimate - count) / count if count else float("nan")
            rows.append({"seed": seed, "estimate": rep.estimate, "rel_error": rel})
        print(json.dumps({
            "triple": spec_text,
            "exact": count,
            "eps": args.eps,
            "delta": args.delta,
            "runs": rows,
            "within_25pct": sum(r["rel_error"] <= 0.25 for r in rows),
        }, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
