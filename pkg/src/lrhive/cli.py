"""Command-line front end with reproducible seeding and JSON output.

Exit codes: 0 success, 1 invalid input, 2 infeasible or empty result
domain, 3 numerical failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import errors
from .estimator import estimate_lrc
from .experiments import (
    inscribed_ball_check,
    logconcavity_check,
    shifted_fraction_experiment,
)
from .geometry import (
    body_from_json,
    dikin_metric,
    facet_center,
    hive_body,
    positivity,
    rounding_transform,
)
from .hive import DEFAULT_BUDGET, exact_count
from .partitions import PartitionTriple, parse_partition
from .sampling import DEFAULT_SEED, WalkParams
from .volume import DEFAULT_WALKERS, estimate_volume

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERIC = 3
EXIT_BUDGET = 4

_INVALID = (
    errors.ParseFailure,
    errors.NotWeaklyDecreasing,
    errors.NegativePart,
    errors.WeightImbalance,
    errors.RankMismatch,
    errors.NonIntegralScale,
    errors.NonIntegralMidpoint,
    errors.OutOfRange,
    errors.DimensionMismatch,
    ValueError,
)
_EMPTY = (errors.Infeasible, errors.FlatBody, errors.SamplingStarved)
_NUMERIC = (
    errors.NotPositiveDefinite,
    errors.OnBoundary,
    errors.RoundingFailure,
    errors.Unbounded,
)


def parse_rational(text: str) -> Fraction:
    """Accept p/q or decimal strings, converted exactly."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise errors.ParseFailure(f"bad rational {text!r}") from exc


def parse_seed(text: str) -> int:
    if text == "random":
        import secrets

        return secrets.randbits(48)
    try:
        return int(text)
    except ValueError as exc:
        raise errors.ParseFailure(f"bad seed {text!r}") from exc


def _triple_args(p: argparse.ArgumentParser):
    p.add_argument("--lambda", dest="lam", required=True, metavar="PARTS")
    p.add_argument("--mu", required=True, metavar="PARTS")
    p.add_argument("--nu", required=True, metavar="PARTS")


def _common_args(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields")
    p.add_argument("--threads", type=int, default=1, help="worker threads for exact counting")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrhive", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact coefficient by hive enumeration")
    _triple_args(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _common_args(p)

    p = sub.add_parser("estimate", help="randomized estimate f * V_hat")
    _triple_args(p)
    p.add_argument("--eps", default="0.1")
    p.add_argument("--delta", default="0.1")
    p.add_argument("--seed", default=str(DEFAULT_SEED))
    p.add_argument("--chains", type=int, default=64)
    p.add_argument("--walkers", type=int, default=DEFAULT_WALKERS)
    _common_args(p)

    p = sub.add_parser("positivity", help="is the coefficient positive?")
    _triple_args(p)
    _common_args(p)

    p = sub.add_parser("volume", help="volume of the relaxed body Q")
    p.add_argument("--lambda", dest="lam", metavar="PARTS")
    p.add_argument("--mu", metavar="PARTS")
    p.add_argument("--nu", metavar="PARTS")
    p.add_argument("--body", metavar="FILE", help="HPolytope JSON file instead of a triple")
    p.add_argument("--eps", default="0.1")
    p.add_argument("--delta", default="0.1")
    p.add_argument("--seed", default=str(DEFAULT_SEED))
    p.add_argument("--walkers", type=int, default=DEFAULT_WALKERS)
    _common_args(p)

    p = sub.add_parser("logconcavity", help="Minkowski containment + count midpoint check")
    p.add_argument("--t1", required=True, metavar="L:M:N")
    p.add_argument("--t2", required=True, metavar="L:M:N")
    p.add_argument("--theta", required=True)
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--seed", default=str(DEFAULT_SEED))
    _common_args(p)

    p = sub.add_parser("fraction", help="shifted-cone fraction experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", default=str(DEFAULT_SEED))
    _common_args(p)

    p = sub.add_parser("ballcheck", help="inscribed-ball report for the shift triple")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps-inv", default="1")
    _common_args(p)
    return ap


def _parse_triple(lam: str, mu: str, nu: str) -> PartitionTriple:
    return PartitionTriple(parse_partition(lam), parse_partition(mu), parse_partition(nu))


def _parse_colon_triple(text: str) -> PartitionTriple:
    parts = text.split(":")
    if len(parts) != 3:
        raise errors.ParseFailure(f"expected L:M:N, got {text!r}")
    return _parse_triple(*parts)


def _emit(args, command: str, inputs: dict, result: dict, diagnostics: dict, human: str) -> None:
    if args.json:
        if args.no_timing:
            result = {k: v for k, v in result.items() if not k.startswith("elapsed")}
            diagnostics = {k: v for k, v in diagnostics.items() if not k.startswith("elapsed")}
        payload = {
            "command": command,
            "input": inputs,
            "result": result,
            "diagnostics": diagnostics,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _cmd_exact(args) -> int:
    t = _parse_triple(args.lam, args.mu, args.nu)
    t0 = time.perf_counter()
    count = exact_count(t, budget=args.budget, workers=max(1, args.threads))
    ms = (time.perf_counter() - t0) * 1e3
    _emit(
        args, "exact",
        {"lambda": list(t.lam), "mu": list(t.mu), "nu": list(t.nu), "budget": args.budget},
        {"count": count, "elapsed_ms": ms},
        {},
        str(count),
    )
    return EXIT_OK


def _cmd_estimate(args) -> int:
    t = _parse_triple(args.lam, args.mu, args.nu)
    eps = parse_rational(args.eps)
    delta = parse_rational(args.delta)
    seed = parse_seed(args.seed)
    report = estimate_lrc(
        t, float(eps), float(delta), seed,
        walk=WalkParams(chains=args.chains),
        volume_walkers=args.walkers,
    )
    result = report.json_dict(timing=not args.no_timing)
    human = (
        f"estimate {report.estimate:.6g}  (volume_Q {report.volume_q:.6g}, "
        f"f {report.proportion_f:.4f}, s {report.sample_count}, "
        f"applicable {str(report.applicable).lower()})"
    )
    if report.diagnostics.get("exact_count") is not None:
        human += f"  [exact {report.diagnostics['exact_count']}]"
    _emit(
        args, "estimate",
        {"lambda": list(t.lam), "mu": list(t.mu), "nu": list(t.nu),
         "eps": str(eps), "delta": str(delta), "seed": seed},
        result,
        report.diagnostics,
        human,
    )
    return EXIT_OK


def _cmd_positivity(args) -> int:
    t = _parse_triple(args.lam, args.mu, args.nu)
    pos = positivity(t)
    _emit(
        args, "positivity",
        {"lambda": list(t.lam), "mu": list(t.mu), "nu": list(t.nu)},
        {"positive": pos},
        {},
        "true" if pos else "false",
    )
    return EXIT_OK


def _cmd_volume(args) -> int:
    if args.body:
        with open(args.body) as fh:
            body = body_from_json(fh.read())
        inputs = {"body": args.body}
    else:
        if not (args.lam and args.mu and args.nu):
            raise errors.ParseFailure("volume needs --lambda/--mu/--nu or --body")
        t = _parse_triple(args.lam, args.mu, args.nu)
        body = hive_body(t, 2)
        inputs = {"lambda": list(t.lam), "mu": list(t.mu), "nu": list(t.nu)}
    eps = float(parse_rational(args.eps))
    delta = float(parse_rational(args.delta))
    seed = parse_seed(args.seed)
    inputs.update({"eps": args.eps, "delta": args.delta, "seed": seed})
    t0 = time.perf_counter()
    if body.dim == 0:
        est_value, phases = 1.0, []
    else:
        rounding = rounding_transform(dikin_metric(body, facet_center(body)))
        est = estimate_volume(body, rounding, eps, delta, seed, walkers=args.walkers)
        est_value, phases = est.value, est.phase_json()
    ms = (time.perf_counter() - t0) * 1e3
    _emit(
        args, "volume", inputs,
        {"volume": est_value, "elapsed_ms": ms},
        {"phases": phases},
        f"{est_value:.6g}",
    )
    return EXIT_OK


def _cmd_logconcavity(args) -> int:
    t1 = _parse_colon_triple(args.t1)
    t2 = _parse_colon_triple(args.t2)
    theta = parse_rational(args.theta)
    seed = parse_seed(args.seed)
    report = logconcavity_check(t1, t2, theta, seed=seed, pairs=args.pairs)
    human = (
        f"structural containment: {'pass' if report['structural_pass'] else 'FAIL'} "
        f"({report['pairs']} pairs)"
    )
    if "counts" in report:
        human += f"; counts {report['counts']}"
    _emit(
        args, "logconcavity",
        {"t1": args.t1, "t2": args.t2, "theta": args.theta, "pairs": args.pairs, "seed": seed},
        report, {}, human,
    )
    return EXIT_OK


def _cmd_fraction(args) -> int:
    seed = parse_seed(args.seed)
    report = shifted_fraction_experiment(args.n, args.gamma, args.trials, seed=seed)
    _emit(
        args, "fraction",
        {"n": args.n, "gamma": args.gamma, "trials": args.trials, "seed": seed},
        report, {},
        f"fraction {report['fraction']:.4f} +- {report['stderr']:.4f} "
        f"({report['trials']} trials, {report['attempts']} attempts)",
    )
    return EXIT_OK


def _cmd_ballcheck(args) -> int:
    report = inscribed_ball_check(args.n, parse_rational(args.eps_inv))
    _emit(
        args, "ballcheck",
        {"n": args.n, "eps_inv": args.eps_inv},
        report, {},
        f"inradius {report['inradius']:.6g} (claimed {report['claimed_inradius']:.6g}, "
        f"quadratic-hive min slack {report['quadratic_hive_min_slack']:.6g})",
    )
    return EXIT_OK


_COMMANDS = {
    "exact": _cmd_exact,
    "estimate": _cmd_estimate,
    "positivity": _cmd_positivity,
    "volume": _cmd_volume,
    "logconcavity": _cmd_logconcavity,
    "fraction": _cmd_fraction,
    "ballcheck": _cmd_ballcheck,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except errors.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _EMPTY as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except _NUMERIC as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
