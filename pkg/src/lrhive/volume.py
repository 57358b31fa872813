"""Volume of a rounded body by multiphase Monte Carlo.

After rounding, the body K = T(Q - x0) contains the unit ball and sits
inside the ball of radius m^{3/2}.  Phase bodies K_i = K cut to the ball of
radius 2^{i/d} grow by a volume factor of at most 2 per phase, so the
fraction of K_i-uniform points inside the previous ball stays >= 1/2 and the
telescoping product recovers vol(K) from the known unit-ball volume.

Phase sampling uses hit-and-run (chord sampling handles the ball cap in
closed form, where the Dikin metric would not); the walkers advance in a
compiled lockstep kernel fed by pregenerated seeded draws, so results are
bit-reproducible.  The paper-facing sampler for the lattice-proportion step
stays the Dikin walk in `sampling`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np
from numba import njit, prange

from .errors import RoundingFailure
from .geometry import HPolytope, RoundingMap, lp_solve

# The built-in layer avoids probing TBB/OpenMP, which warns on some installs;
# walkers are independent so any layer gives identical results.
numba.config.THREADING_LAYER = "workqueue"

# Per-phase Hoeffding constant; with T phases each fraction >= 1/2 estimated
# from ceil(32 T ln(2T/delta) / eps^2) points, the product lands within
# (1 +- eps) with probability > 1 - delta.
PHASE_SAMPLE_CONSTANT = 32
DEFAULT_WALKERS = 512
PHASE_BURN_FACTOR = 4  # warm-started walkers take 4*d steps before counting


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


@dataclass(frozen=True)
class AnnealingSchedule:
    """Ball radii 2^{i/d} from 1 up to the first radius >= m^{3/2}."""

    radii: tuple[float, ...]
    samples_per_phase: int

    @property
    def phases(self) -> int:
        return len(self.radii) - 1


def make_schedule(d: int, m: int, eps: float, delta: float) -> AnnealingSchedule:
    target = float(m) ** 1.5
    phases = max(1, math.ceil(d * math.log2(target)))
    radii = tuple(2.0 ** (i / d) for i in range(phases + 1))
    n = math.ceil(PHASE_SAMPLE_CONSTANT * phases * math.log(2 * phases / delta) / eps**2)
    return AnnealingSchedule(radii, n)


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    det_t: float
    rounded_volume: float  # value * det_t, the volume in rounded coordinates
    phases: tuple[dict, ...]
    samples_per_phase: int
    degenerate: bool = False

    def phase_json(self) -> list[dict]:
        return [dict(p) for p in self.phases]


@njit(parallel=True, cache=True)
def _hit_and_run_block(g, r, x, gx, sq, radius_sq, inner_sq, normals, tdraws, count_from):
    """Advance all walkers through one block of steps; returns inner-ball hits.

    Walkers are independent, so the parallel schedule cannot change any
    trajectory; the hit count is an exact integer sum.
    """
    w_count, d = x.shape
    m = g.shape[0]
    steps = tdraws.shape[1]
    hits = 0
    for w in prange(w_count):
        u = np.empty(d)
        gu = np.empty(m)
        local = 0
        for s in range(steps):
            norm2 = 0.0
            for j in range(d):
                v = normals[w, s, j]
                u[j] = v
                norm2 += v * v
            inv = 1.0 / math.sqrt(norm2)
            xu = 0.0
            for j in range(d):
                u[j] *= inv
                xu += x[w, j] * u[j]
            lo = -1.0e300
            hi = 1.0e300
            for i in range(m):
                acc = 0.0
                for j in range(d):
                    acc += g[i, j] * u[j]
                gu[i] = acc
                slack = r[i] - gx[w, i]
                if acc > 1e-13:
                    cap = slack / acc
                    if cap < hi:
                        hi = cap
                elif acc < -1e-13:
                    cap = slack / acc
                    if cap > lo:
                        lo = cap
            disc = xu * xu - sq[w] + radius_sq
            if disc < 0.0:
                disc = 0.0
            root = math.sqrt(disc)
            if -xu + root < hi:
                hi = -xu + root
            if -xu - root > lo:
                lo = -xu - root
            t = lo + (hi - lo) * tdraws[w, s]
            if hi < lo:
                t = 0.0
            for j in range(d):
                x[w, j] += t * u[j]
            for i in range(m):
                gx[w, i] += t * gu[i]
            sq[w] += 2.0 * t * xu + t * t
            if s >= count_from and sq[w] <= inner_sq:
                local += 1
        hits += local
    return hits


class _HitAndRun:
    """Seeded lockstep walkers on {G y <= r} cut to a ball of set radius."""

    def __init__(self, g: np.ndarray, r: np.ndarray, x0: np.ndarray, rng: np.random.Generator):
        self.g = np.ascontiguousarray(g, dtype=np.float64)
        self.r = np.ascontiguousarray(r, dtype=np.float64)
        self.rng = rng
        self.x = np.ascontiguousarray(x0, dtype=np.float64)
        self.w, self.d = self.x.shape
        self.radius = 1.0
        self._sync()

    def _sync(self):
        """Recompute caches from x (also kills incremental float drift)."""
        self.gx = self.x @ self.g.T
        self.sq = np.einsum("wi,wi->w", self.x, self.x)

    def run(self, steps: int, count_from: int, inner_radius: float) -> int:
        """Advance `steps` steps; count states with |x| <= inner_radius from
        step index `count_from` on."""
        self._sync()
        hits = 0
        done = 0
        block = max(1, int(8_000_000 // max(1, self.w * self.d)))
        while done < steps:
            k = min(block, steps - done)
            normals = self.rng.standard_normal((self.w, k, self.d))
            tdraws = self.rng.uniform(size=(self.w, k))
            start = count_from - done
            if start < 0:
                start = 0
            hits += int(
                _hit_and_run_block(
                    self.g, self.r, self.x, self.gx, self.sq,
                    self.radius**2, inner_radius**2, normals, tdraws, start,
                )
            )
            done += k
        return hits


def estimate_volume(
    body: HPolytope,
    rounding: RoundingMap,
    eps: float,
    delta: float,
    seed: int,
    walkers: int = DEFAULT_WALKERS,
    burn: int | None = None,
) -> VolumeEstimate:
    """Estimate vol(body) to relative error eps with confidence 1 - delta.

    The estimate is vol(B_d) * prod_i vol(K_i)/vol(K_{i-1}) / det(T); each
    consecutive ratio is one over the measured fraction of K_i-uniform
    samples landing inside the previous ball.
    """
    d = body.dim
    if d == 0:
        return VolumeEstimate(1.0, 1.0, 1.0, (), 0, degenerate=True)
    a, off = body.dense()
    g = a @ rounding.T_inv
    r = off - a @ rounding.x0
    if np.any(r <= 0):
        raise RoundingFailure("rounding center is not strictly interior")
    row_norms = np.linalg.norm(g, axis=1)
    if np.any(r < row_norms * (1 - 1e-9)):
        raise RoundingFailure("unit ball is not inside the rounded body")

    schedule = make_schedule(d, body.m, eps, delta)
    rng = np.random.default_rng(seed)
    burn = burn if burn is not None else max(16, PHASE_BURN_FACTOR * d)
    walkers = max(1, walkers)
    from .sampling import sample_ball

    chains = _HitAndRun(g, r, sample_ball(rng, walkers, d), rng)
    rounds = -(-schedule.samples_per_phase // walkers)
    log_product = 0.0
    phases: list[dict] = []
    for i in range(1, schedule.phases + 1):
        chains.radius = schedule.radii[i]
        inner = schedule.radii[i - 1]
        hits = chains.run(burn + rounds, burn, inner)
        total = rounds * walkers
        fraction = hits / total
        if fraction <= 0:
            raise RoundingFailure(f"phase {i} saw no points in the inner ball")
        log_product += math.log(fraction)
        phases.append(
            {"phase": i, "radius": schedule.radii[i], "ratio": fraction, "samples": total}
        )
    det_t = rounding.det_T
    rounded_volume = math.exp(math.log(unit_ball_volume(d)) - log_product)
    return VolumeEstimate(
        rounded_volume / det_t, det_t, rounded_volume, tuple(phases), schedule.samples_per_phase
    )


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    stderr: float
    box_volume: float
    hits: int
    samples: int


def exact_volume_oracle(body: HPolytope, box_samples: int, seed: int) -> OracleEstimate:
    """Independent rejection-sampling volume estimate for small dimensions.

    Bounds the body with per-coordinate LPs and reports the hit fraction of
    uniform box samples with its binomial standard error.  Intended for
    d <= 6 cross-checks of `estimate_volume`.
    """
    d = body.dim
    if d == 0:
        return OracleEstimate(1.0, 0.0, 1.0, box_samples, box_samples)
    lo = np.empty(d)
    hi = np.empty(d)
    for j in range(d):
        e = [0] * d
        e[j] = 1
        hi[j] = float(lp_solve(body, e, "max").value)
        lo[j] = float(lp_solve(body, e, "min").value)
    box_vol = float(np.prod(hi - lo))
    if box_vol == 0.0:
        return OracleEstimate(0.0, 0.0, 0.0, 0, box_samples)
    rng = np.random.default_rng(seed)
    a, off = body.dense()
    hits = 0
    chunk = 200_000
    done = 0
    while done < box_samples:
        n = min(chunk, box_samples - done)
        x = lo + (hi - lo) * rng.uniform(size=(n, d))
        hits += int(np.count_nonzero(np.all(x @ a.T <= off + 1e-12, axis=1)))
        done += n
    p = hits / box_samples
    stderr = box_vol * math.sqrt(max(p * (1 - p), 0.0) / box_samples)
    return OracleEstimate(box_vol * p, stderr, box_vol, hits, box_samples)
