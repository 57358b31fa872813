"""Constraint-form bodies P/Q/O, exact LP queries, and the rounding step.

A body is {x : A x - b <= slack * 1} with A stored sparsely as (column,
sign) pairs per row, signs in {-1, +1}.  slack = 0 gives the hive polytope
P, +2 the relaxed body Q, -2 the tightened body O.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exactlp
from .errors import (
    DimensionMismatch,
    FlatBody,
    Infeasible,
    NotPositiveDefinite,
    OnBoundary,
    Unbounded,
)
from .hive import Row, build_rhombus_system
from .partitions import PartitionTriple

Number = int | Fraction


@dataclass(frozen=True)
class HPolytope:
    rows: tuple[Row, ...]
    b: tuple[Number, ...]
    slack: Number
    dim: int

    def __post_init__(self):
        if len(self.rows) != len(self.b):
            raise DimensionMismatch("rows and b lengths differ")
        for row in self.rows:
            for col, sign in row:
                if not 0 <= col < self.dim or sign not in (-1, 1):
                    raise DimensionMismatch(f"bad row entry {(col, sign)}")

    @property
    def m(self) -> int:
        return len(self.rows)

    def offsets(self) -> tuple[Number, ...]:
        """Right-hand sides b_i + slack."""
        return tuple(bi + self.slack for bi in self.b)

    def with_slack(self, slack: Number) -> "HPolytope":
        return HPolytope(self.rows, self.b, slack, self.dim)

    def scaled(self, c: Number) -> "HPolytope":
        """The dilated body c * {x : A x <= b + slack}."""
        return HPolytope(self.rows, tuple(c * v for v in self.b), c * self.slack, self.dim)

    def matrix(self) -> list[list[int]]:
        """Dense integer constraint matrix."""
        out = [[0] * self.dim for _ in range(self.m)]
        for i, row in enumerate(self.rows):
            for col, sign in row:
                out[i][col] = sign
        return out

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """(A, offsets) as float arrays."""
        a = np.zeros((self.m, self.dim))
        for i, row in enumerate(self.rows):
            for col, sign in row:
                a[i, col] = sign
        return a, np.array([float(v) for v in self.offsets()])

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        a, off = self.dense()
        return bool(np.all(a @ np.asarray(x, dtype=float) <= off + tol))

    def contains_exact(self, x: Sequence[Number], strict: bool = False) -> bool:
        for row, off in zip(self.rows, self.offsets()):
            lhs = sum(sign * x[col] for col, sign in row)
            if lhs > off or (strict and lhs == off):
                return False
        return True


def hive_body(t: PartitionTriple, slack: Number = 0) -> HPolytope:
    system = build_rhombus_system(t)
    return HPolytope(system.rows, system.b, slack, system.dim)


def cube(d: int, lo: Number = -1, hi: Number = 1) -> HPolytope:
    rows = tuple(((j, s),) for j in range(d) for s in (1, -1))
    b = tuple(v for _ in range(d) for v in (hi, -lo))
    return HPolytope(rows, b, 0, d)


def simplex_body(d: int) -> HPolytope:
    """Standard simplex {x >= 0, sum x <= 1}."""
    rows = (tuple((j, 1) for j in range(d)),) + tuple(((j, -1),) for j in range(d))
    return HPolytope(rows, (1,) + (0,) * d, 0, d)


def body_to_json(body: HPolytope) -> str:
    def num(v: Number):
        f = Fraction(v)
        return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    return json.dumps(
        {
            "rows": [[[col, sign] for col, sign in row] for row in body.rows],
            "b": [num(v) for v in body.b],
            "slack": num(body.slack),
        }
    )


def body_from_json(text: str) -> HPolytope:
    obj = json.loads(text)

    def num(v) -> Number:
        return Fraction(v) if isinstance(v, str) else (v if isinstance(v, int) else Fraction(str(v)))

    rows = tuple(tuple((int(c), int(s)) for c, s in row) for row in obj["rows"])
    dim = obj.get("dim")
    if dim is None:
        dim = 1 + max((col for row in rows for col, _ in row), default=-1)
    return HPolytope(rows, tuple(num(v) for v in obj["b"]), num(obj["slack"]), int(dim))


@dataclass(frozen=True)
class LPOptimum:
    point: tuple[Fraction, ...]
    value: Fraction


def lp_solve(body: HPolytope, objective: Sequence[Number], sense: str = "max") -> LPOptimum:
    """Exact vertex optimum of the objective over the body (Bland's rule)."""
    if len(objective) != body.dim:
        raise DimensionMismatch("objective length != body dim")
    res = exactlp.solve_lp(body.matrix(), body.offsets(), list(objective), sense)
    if res.status == exactlp.INFEASIBLE:
        raise Infeasible("body is empty")
    if res.status == exactlp.UNBOUNDED:
        raise Unbounded("objective unbounded over body")
    return LPOptimum(res.x, res.value)


def feasible(body: HPolytope) -> bool:
    return exactlp.lp_feasible(body.matrix(), body.offsets())


def positivity(t: PartitionTriple) -> bool:
    """Whether the coefficient indexed by t is positive.

    By saturation, positivity is equivalent to real feasibility of the
    slack-0 hive body.
    """
    return feasible(hive_body(t, 0))


def facet_center(body: HPolytope) -> tuple[Fraction, ...]:
    """Average of the per-facet far points x_f.

    For each distinct facet row, optimize the row direction both ways.  If
    both optima lie on the facet hyperplane the body is flat (zero volume).
    Otherwise keep the optimum off the hyperplane; duplicated rows contribute
    one point.  The average of the far points is strictly interior.
    """
    if body.dim == 0:
        raise FlatBody("zero-dimensional body has no facets")
    seen = set()
    facets: list[tuple[Row, Number]] = []
    for row, off in zip(body.rows, body.offsets()):
        key = (row, off)
        if key not in seen:
            seen.add(key)
            facets.append((row, off))
    points: list[tuple[Fraction, ...]] = []
    for row, off in facets:
        direction = [0] * body.dim
        for col, sign in row:
            direction[col] = sign
        hi = lp_solve(body, direction, "max")
        lo = lp_solve(body, direction, "min")
        if hi.value == off and lo.value == off:
            raise FlatBody(f"body lies in the hyperplane of row {row}")
        points.append(lo.point if lo.value != off else hi.point)
    k = len(points)
    return tuple(sum(p[j] for p in points) / k for j in range(body.dim))


@dataclass(frozen=True)
class DikinMetric:
    """Log-barrier Hessian H(x0) = sum_i a_i a_i^T / (off_i - a_i.x0)^2."""

    x0: np.ndarray
    H: np.ndarray
    exact_h: tuple[tuple[Fraction, ...], ...] | None = None


def dikin_metric(body: HPolytope, x0: Sequence[Number] | np.ndarray, exact: bool = False) -> DikinMetric:
    if len(x0) != body.dim:
        raise DimensionMismatch("x0 length != body dim")
    exact_input = not isinstance(x0, np.ndarray)
    if exact_input:
        res = []
        for row, off in zip(body.rows, body.offsets()):
            r = Fraction(off) - sum(sign * Fraction(x0[col]) for col, sign in row)
            if r <= 0:
                raise OnBoundary(f"residual {r} <= 0")
            res.append(r)
    else:
        a, off = body.dense()
        resf = off - a @ np.asarray(x0, dtype=float)
        if np.any(resf <= 0):
            raise OnBoundary("nonpositive residual")
        res = list(resf)
    a, _ = body.dense()
    w = np.array([float(r) for r in res]) ** -2.0
    h = np.einsum("mi,m,mj->ij", a, w, a)
    exact_h = None
    if exact:
        if not exact_input:
            raise ValueError("exact metric needs rational x0")
        d = body.dim
        acc = [[Fraction(0)] * d for _ in range(d)]
        for row, r in zip(body.rows, res):
            inv2 = 1 / (Fraction(r) * Fraction(r))
            for ci, si in row:
                for cj, sj in row:
                    acc[ci][cj] += si * sj * inv2
        exact_h = tuple(tuple(v for v in rw) for rw in acc)
    x0f = np.array([float(v) for v in x0], dtype=float)
    return DikinMetric(x0f, h, exact_h)


@dataclass(frozen=True)
class RoundingMap:
    """y = T (x - x0) with T the transposed Cholesky factor of the metric."""

    x0: np.ndarray
    T: np.ndarray
    T_inv: np.ndarray = field(repr=False)

    @property
    def det_T(self) -> float:
        return float(np.prod(np.diag(self.T)))

    def to_rounded(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=float) - self.x0) @ self.T.T

    def from_rounded(self, y: np.ndarray) -> np.ndarray:
        return self.x0 + np.asarray(y, dtype=float) @ self.T_inv.T


def rounding_transform(metric: DikinMetric) -> RoundingMap:
    """Map the radius-1 Dikin ellipsoid onto the unit ball via Cholesky."""
    try:
        lower = np.linalg.cholesky(metric.H)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("metric is not positive definite") from exc
    t = lower.T
    return RoundingMap(metric.x0, t, np.linalg.inv(t))


@dataclass(frozen=True)
class ChebyshevBall:
    center: tuple[Fraction, ...]
    radius: Fraction
    # Row norms sqrt(k) enter the LP as binary64 literals; answers are exact
    # for those literals and within ~1e-12 of the true-irrational problem.
    norm_tolerance: float = 1e-12


def chebyshev_center(body: HPolytope) -> ChebyshevBall:
    """Largest inscribed ball via the LP max r, a_i.x + ||a_i|| r <= off_i."""
    d = body.dim
    a = [[Fraction(0)] * (d + 1) for _ in range(body.m + 1)]
    rhs: list[Number] = []
    for i, (row, off) in enumerate(zip(body.rows, body.offsets())):
        for col, sign in row:
            a[i][col] = Fraction(sign)
        norm = Fraction(math.sqrt(len(row))) if len(row) != 1 else Fraction(1)
        a[i][d] = norm
        rhs.append(off)
    a[body.m][d] = Fraction(-1)  # r >= 0
    rhs.append(0)
    objective = [Fraction(0)] * d + [Fraction(1)]
    res = exactlp.solve_lp(a, rhs, objective, "max")
    if res.status == exactlp.INFEASIBLE:
        raise Infeasible("body is empty")
    if res.status == exactlp.UNBOUNDED:
        raise Unbounded("inscribed radius unbounded")
    return ChebyshevBall(res.x[:d], res.value)
