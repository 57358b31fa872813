"""Dikin-walk Markov chain over a constraint body.

Proposals are uniform in the local Dikin ellipsoid of radius r; a move to y
is rejected unless y is strictly interior, x lies in y's ellipsoid, and a
determinant-ratio Metropolis filter accepts, which makes the uniform law on
the body stationary.

Chains run in vectorized lockstep: chain w consumes column w of each batched
draw, so chain w's stream is a fixed function of (seed, chains) and outputs
are bit-reproducible.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from .errors import OnBoundary
from .geometry import HPolytope

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class WalkParams:
    """Walk tuning; None fields resolve from the body's shape.

    Defaults: radius 0.4/sqrt(d) (about a 1/sqrt(d) proposal, tuned for
    >= 25% acceptance on test bodies), burn_in 200*d*m, thinning 10*d.
    """

    radius: float | None = None
    burn_in: int | None = None
    thinning: int | None = None
    seed: int = DEFAULT_SEED
    chains: int = 64

    def resolve(self, d: int, m: int) -> "WalkParams":
        r = self.radius if self.radius is not None else 0.4 / math.sqrt(d)
        burn = self.burn_in if self.burn_in is not None else 200 * d * m
        thin = self.thinning if self.thinning is not None else 10 * d
        if not 0 < r < 1:
            raise ValueError(f"radius must be in (0,1), got {r}")
        if burn < 1 or thin < 1:
            raise ValueError("burn_in and thinning must be >= 1")
        if self.chains < 1:
            raise ValueError("chains must be >= 1")
        return WalkParams(r, burn, thin, self.seed, self.chains)


def sample_ball(rng: np.random.Generator, size: int, d: int) -> np.ndarray:
    """Uniform points in the d-dimensional unit ball, shape (size, d)."""
    z = rng.standard_normal((size, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return z * rng.uniform(size=(size, 1)) ** (1.0 / d)


class _Chains:
    """Lockstep Dikin chains sharing one generator."""

    def __init__(self, body: HPolytope, x0: np.ndarray, radius: float, rng: np.random.Generator):
        self.a, self.off = body.dense()
        self.radius = radius
        self.rng = rng
        self.x = np.array(x0, dtype=float)  # (W, d)
        self.w, self.d = self.x.shape
        self.res = self.off - self.x @ self.a.T
        if np.any(self.res <= 0):
            raise OnBoundary("start point not strictly interior")
        self.logdet = self._logdet(self._metric(self.res))
        self.steps = 0
        self.accept_total = 0

    def _metric(self, res: np.ndarray) -> np.ndarray:
        return np.einsum("mi,wm,mj->wij", self.a, res**-2.0, self.a, optimize=True)

    @staticmethod
    def _logdet(h: np.ndarray) -> np.ndarray:
        sign, val = np.linalg.slogdet(h)
        return np.where(sign > 0, val, -np.inf)

    def step(self) -> np.ndarray:
        """Advance every chain one step; returns the acceptance mask."""
        r = self.radius
        h_x = self._metric(self.res)
        lower = np.linalg.cholesky(h_x)
        z = sample_ball(self.rng, self.w, self.d)
        # y = x + r * L^-T z maps the ball draw into the Dikin ellipsoid
        lt = np.swapaxes(lower, 1, 2)
        y = self.x + r * np.linalg.solve(lt, z[..., None])[..., 0]
        res_y = self.off - y @ self.a.T
        interior = np.all(res_y > 0, axis=1)
        safe = np.where(res_y > 0, res_y, 1.0)
        h_y = self._metric(safe)
        v = self.x - y
        qform = np.einsum("wi,wij,wj->w", v, h_y, v)
        logdet_y = self._logdet(h_y)
        log_u = np.log(self.rng.uniform(size=self.w))
        accept = (
            interior
            & (qform <= r * r)
            & (log_u < 0.5 * (logdet_y - self.logdet))
        )
        self.x[accept] = y[accept]
        self.res[accept] = res_y[accept]
        self.logdet[accept] = logdet_y[accept]
        self.steps += 1
        self.accept_total += int(accept.sum())
        return accept

    def assert_interior(self):
        if not np.all(self.res > 0):
            raise OnBoundary("walk state left the interior")


@dataclass(frozen=True)
class WalkState:
    """One chain's state for the stepwise API."""

    x: np.ndarray
    residuals: np.ndarray
    logdet: float
    steps: int
    rng: np.random.Generator
    accepted: bool = False


def start_state(body: HPolytope, x0, params: WalkParams | None = None) -> WalkState:
    params = (params or WalkParams()).resolve(body.dim, body.m)
    rng = np.random.default_rng(params.seed)
    a, off = body.dense()
    x = np.asarray(x0, dtype=float)
    res = off - a @ x
    if np.any(res <= 0):
        raise OnBoundary("start point not strictly interior")
    chains = _Chains(body, x[None, :], params.radius, rng)
    return WalkState(x, res, float(chains.logdet[0]), 0, rng)


def dikin_step(state: WalkState, body: HPolytope, radius: float | None = None) -> WalkState:
    """One proposal/accept round; rejection returns the old point."""
    r = radius if radius is not None else 0.4 / math.sqrt(body.dim)
    chains = _Chains(body, state.x[None, :], r, state.rng)
    chains.logdet = np.array([state.logdet])
    accept = chains.step()
    return WalkState(
        chains.x[0].copy(),
        chains.res[0].copy(),
        float(chains.logdet[0]),
        state.steps + 1,
        state.rng,
        bool(accept[0]),
    )


def sample_uniform(
    body: HPolytope,
    count: int,
    params: WalkParams | None = None,
    start=None,
    assert_membership: bool = False,
    trace: IO[str] | None = None,
) -> np.ndarray:
    """Approximately uniform points from the body, shape (count, dim).

    Runs `params.chains` lockstep chains from `start`, discards burn_in
    steps, then keeps one point per chain every `thinning` steps; outputs are
    concatenated in chain order and trimmed to `count`.  Deterministic given
    (body, params, start).  `trace` writes a CSV (step, chain-0 coordinates,
    accepted flag).  `assert_membership` rechecks strict interiority after
    every step.
    """
    if start is None:
        from .geometry import facet_center

        start = facet_center(body)
    params = (params or WalkParams()).resolve(body.dim, body.m)
    rng = np.random.default_rng(params.seed)
    x0 = np.tile(np.asarray(start, dtype=float), (params.chains, 1))
    chains = _Chains(body, x0, params.radius, rng)
    writer = csv.writer(trace) if trace is not None else None
    if writer is not None:
        writer.writerow(["step"] + [f"x{j}" for j in range(body.dim)] + ["accepted"])

    def advance(nsteps: int):
        for _ in range(nsteps):
            accept = chains.step()
            if assert_membership:
                chains.assert_interior()
            if writer is not None:
                writer.writerow([chains.steps, *chains.x[0], int(accept[0])])

    advance(params.burn_in)
    rounds = -(-count // params.chains)
    out = np.empty((rounds * params.chains, body.dim))
    for k in range(rounds):
        advance(params.thinning)
        out[k * params.chains : (k + 1) * params.chains] = chains.x
    return out[:count]


def walk_states(
    body: HPolytope, steps: int, params: WalkParams | None = None, start=None
) -> tuple[np.ndarray, np.ndarray]:
    """Every state of every chain: (steps+1, W, d) states, (steps, W) accepts.

    Diagnostic helper for mixing and reversibility checks.
    """
    if start is None:
        from .geometry import facet_center

        start = facet_center(body)
    params = (params or WalkParams()).resolve(body.dim, body.m)
    rng = np.random.default_rng(params.seed)
    x0 = np.tile(np.asarray(start, dtype=float), (params.chains, 1))
    chains = _Chains(body, x0, params.radius, rng)
    states = np.empty((steps + 1, params.chains, body.dim))
    accepts = np.empty((steps, params.chains), dtype=bool)
    states[0] = chains.x
    for s in range(steps):
        accepts[s] = chains.step()
        states[s + 1] = chains.x
    return states, accepts
