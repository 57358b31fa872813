"""Desk-scale empirical checks of the structural claims.

Absolute constants from the analysis are never assumed: each experiment
reports measured slacks, radii, or fractions and asserts only signs,
monotonicity, and agreement between independent oracles.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction
from math import comb
from typing import IO

import numpy as np

from .errors import NonIntegralMidpoint, SamplingStarved
from .estimator import applicability
from .geometry import (
    chebyshev_center,
    dikin_metric,
    facet_center,
    hive_body,
    lp_solve,
    positivity,
    rounding_transform,
)
from .hive import DEFAULT_BUDGET, exact_count, quadratic_hive
from .partitions import Partition, PartitionTriple, make_shift
from .volume import estimate_volume


def _frac_str(v: Fraction) -> str:
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def inscribed_ball_check(n: int, eps_inverse: Fraction | int = 1) -> dict:
    """Inscribed-ball report for the shift-triple hive body.

    Builds P for (Delta_eps, Delta_eps, Delta'_eps), evaluates the quadratic
    hive's worst row slack exactly, and measures the Chebyshev inradius
    against the claimed bound binom(n,2)/(2 eps).
    """
    if n < 3:
        raise ValueError("interior is empty below n = 3")
    shift = make_shift(n, eps_inverse)
    t = shift.shifted_triple()
    body = hive_body(t, 0)
    x_f = quadratic_hive(n, eps_inverse)
    slacks = [
        Fraction(off) - sum(sign * x_f[col] for col, sign in row)
        for row, off in zip(body.rows, body.offsets())
    ]
    min_slack = min(slacks)
    ball = chebyshev_center(body)
    scale = Fraction(eps_inverse)
    claimed_inradius = Fraction(comb(n, 2)) * scale / 2
    claimed_margin = 2 * scale * comb(n, 2)
    return {
        "n": n,
        "eps_inverse": _frac_str(scale),
        "dimension": body.dim,
        "rows": body.m,
        "quadratic_hive_min_slack": float(min_slack),
        "quadratic_hive_min_slack_exact": _frac_str(min_slack),
        "quadratic_hive_interior": min_slack > 0,
        "claimed_margin": float(claimed_margin),
        "inradius": float(ball.radius),
        "inradius_exact": _frac_str(ball.radius),
        "claimed_inradius": float(claimed_inradius),
        "inradius_ratio": float(Fraction(ball.radius) / claimed_inradius),
        "positive": ball.radius > 0,
        "norm_tolerance": ball.norm_tolerance,
    }


def volume_ratio_check(t: PartitionTriple, eps: float = 0.1, seed: int = 0,
                       budget: int = DEFAULT_BUDGET) -> dict:
    """Exact lattice count against the estimated volume of Q.

    The count can never exceed vol(Q) (up to estimator noise); the lower end
    is reported but not asserted against the analysis' unspecified constant.
    """
    body = hive_body(t, 2)
    if body.dim > 6:
        raise ValueError("exact count is only intended up to dimension 6")
    count = exact_count(t, budget=budget)
    rounding = rounding_transform(dikin_metric(body, facet_center(body)))
    vol = estimate_volume(body, rounding, eps, 0.05, seed)
    ratio = count / vol.value if vol.value else math.inf
    return {
        "triple": str(t),
        "dimension": body.dim,
        "count": count,
        "volume_q": vol.value,
        "ratio": ratio,
        "eps": eps,
        "upper_bound": 1 + 3 * eps,
        "upper_ok": ratio <= 1 + 3 * eps,
        "seed": seed,
    }


def _combine(t1: PartitionTriple, t2: PartitionTriple, theta: Fraction) -> PartitionTriple:
    def mix(p1: Partition, p2: Partition) -> Partition:
        vals = [theta * a + (1 - theta) * b for a, b in zip(p1, p2)]
        if any(v.denominator != 1 for v in vals):
            raise NonIntegralMidpoint(f"combination {vals} is not integral")
        return Partition([int(v) for v in vals])

    return PartitionTriple(mix(t1.lam, t2.lam), mix(t1.mu, t2.mu), mix(t1.nu, t2.nu))


def _random_points(body, rng: np.random.Generator, count: int) -> list[tuple[Fraction, ...]]:
    """Exact rational points: random convex combinations of LP vertices."""
    vertices = []
    for _ in range(max(4, body.dim + 2)):
        obj = [int(v) for v in rng.integers(-9, 10, size=body.dim)]
        if all(v == 0 for v in obj):
            obj[0] = 1
        vertices.append(lp_solve(body, obj, "max").point)
    points = []
    for _ in range(count):
        w = [Fraction(int(v)) for v in rng.integers(1, 11, size=len(vertices))]
        total = sum(w)
        points.append(
            tuple(
                sum(wi * v[j] for wi, v in zip(w, vertices)) / total
                for j in range(body.dim)
            )
        )
    return points


def logconcavity_check(
    t1: PartitionTriple,
    t2: PartitionTriple,
    theta: Fraction,
    seed: int = 0,
    pairs: int = 100,
    budget: int = DEFAULT_BUDGET,
    trail: IO[str] | None = None,
) -> dict:
    """Minkowski containment of Q-bodies plus the count midpoint inequality.

    Part (a) is exact and structural: theta x + (1-theta) y for x in Q(t1),
    y in Q(t2) always lies in Q of the combined triple, because the offset
    vector is affine in the boundary data.  Part (b) reports the log-count
    combination in both orientations of the stated inequality, with slacks
    reported rather than asserted.
    """
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"theta must be in (0,1), got {theta}")
    mid = _combine(t1, t2, theta)
    q1, q2, qmid = hive_body(t1, 2), hive_body(t2, 2), hive_body(mid, 2)
    rng = np.random.default_rng(seed)
    xs = _random_points(q1, rng, pairs)
    ys = _random_points(q2, rng, pairs)
    writer = csv.writer(trail) if trail is not None else None
    if writer is not None:
        writer.writerow(["pair", "contained"])
    failures = 0
    for k, (x, y) in enumerate(zip(xs, ys)):
        z = tuple(theta * a + (1 - theta) * b for a, b in zip(x, y))
        ok = qmid.contains_exact(z)
        failures += not ok
        if writer is not None:
            writer.writerow([k, int(ok)])
    report: dict = {
        "theta": _frac_str(theta),
        "pairs": pairs,
        "structural_failures": failures,
        "structural_pass": failures == 0,
        "midpoint_triple": str(mid),
        "seed": seed,
    }
    if qmid.dim <= 6:
        c1, c2, cmid = (exact_count(t, budget=budget) for t in (t1, t2, mid))
        report["counts"] = {"t1": c1, "t2": c2, "midpoint": cmid}
        if min(c1, c2, cmid) > 0:
            th = float(theta)
            report["midpoint_form"] = {
                "lhs": math.log(cmid),
                "rhs": th * math.log(c1) + (1 - th) * math.log(c2),
                "slack_needed": max(0.0, th * math.log(c1) + (1 - th) * math.log(c2) - math.log(cmid)),
            }
            report["printed_form"] = {
                "lhs": math.log(c1),
                "rhs": th * math.log(c2) + (1 - th) * math.log(cmid),
                "slack_needed": max(0.0, th * math.log(c2) + (1 - th) * math.log(cmid) - math.log(c1)),
            }
    return report


def _random_partition(rng: np.random.Generator, n: int, cap: int) -> Partition:
    return Partition(sorted((int(v) for v in rng.integers(0, cap + 1, size=n)), reverse=True))


def _complete_nu(rng: np.random.Generator, lam: Partition, mu: Partition) -> Partition:
    """Dominance-respecting completion: multinomial split of |lam|+|mu| with
    cell weights following lam + mu."""
    s = lam.weight + mu.weight
    if s == 0:
        return Partition([0] * len(lam))
    weights = np.array([a + b + 1 for a, b in zip(lam, mu)], dtype=float)
    draw = rng.multinomial(s, weights / weights.sum())
    return Partition(sorted((int(v) for v in draw), reverse=True))


def shifted_fraction_experiment(
    n: int,
    gamma: int,
    trials: int,
    seed: int = 0,
    max_attempts: int | None = None,
    trail: IO[str] | None = None,
) -> dict:
    """Fraction of sampled cone triples that land in the shifted cone.

    Rejection-samples integer triples with l1 norm at most gamma, keeps the
    positivity-passing ones, and measures how many also pass the
    applicability test.  Binomial error bars accompany the fraction.
    """
    if n < 3:
        raise ValueError("experiment is defined for n >= 3")
    shift = make_shift(n)
    shift_norm = 2 * shift.delta.weight + shift.delta_prime.weight
    if gamma <= shift_norm:
        raise ValueError(f"gamma must exceed |(Delta,Delta,Delta')|_1 = {shift_norm}")
    rng = np.random.default_rng(seed)
    cap = max(1, gamma // (3 * n))
    max_attempts = max_attempts if max_attempts is not None else 50 * trials
    writer = csv.writer(trail) if trail is not None else None
    if writer is not None:
        writer.writerow(["attempt", "norm", "in_cone", "in_shifted_cone"])
    accepted = 0
    applicable_count = 0
    attempts = 0
    while accepted < trials and attempts < max_attempts:
        attempts += 1
        lam = _random_partition(rng, n, cap)
        mu = _random_partition(rng, n, cap)
        norm = 2 * (lam.weight + mu.weight)
        if norm > gamma:
            if writer is not None:
                writer.writerow([attempts, norm, "", ""])
            continue
        t = PartitionTriple(lam, mu, _complete_nu(rng, lam, mu))
        in_cone = positivity(t)
        in_shifted = applicability(t) if in_cone else False
        if writer is not None:
            writer.writerow([attempts, norm, int(in_cone), int(in_shifted)])
        if in_cone:
            accepted += 1
            applicable_count += int(in_shifted)
    if accepted < trials:
        raise SamplingStarved(
            f"only {accepted}/{trials} cone triples in {attempts} attempts"
        )
    fraction = applicable_count / accepted
    return {
        "n": n,
        "gamma": gamma,
        "trials": accepted,
        "attempts": attempts,
        "fraction": fraction,
        "stderr": math.sqrt(max(fraction * (1 - fraction), 0.0) / accepted),
        "cone_rate": accepted / attempts,
        "entry_cap": cap,
        "seed": seed,
    }
