"""Triangular-lattice hives: boundary data, rhombus systems, exact counting.

Node convention: (i, j) with i, j >= 0 and i + j <= n, bottom-left origin.
The bottom edge is j = 0, the left edge i = 0, the long edge i + j = n.
Interior nodes (i, j >= 1, i + j <= n - 1) are the unknowns; their column
order is lexicographic in (j, i).

A unit rhombus is a downward triangle glued to one of its three upward
neighbours; the two shared nodes carry the 120-degree corners.  The hive
condition for values w, x, y, z with obtuse corners at w, y is
w + y >= x + z, stored in A*x - b <= 0 form with boundary terms folded
into b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetExceeded, DimensionMismatch
from .partitions import PartitionTriple, triple

Node = tuple[int, int]
# A row is a tuple of (column, sign) pairs with sign in {-1, +1}.
Row = tuple[tuple[int, int], ...]

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class TriangularLattice:
    """Side-n triangular lattice with a fixed interior-node column order."""

    n: int
    interior: tuple[Node, ...]
    boundary: tuple[Node, ...]
    column: dict  # Node -> column index

    @property
    def dim(self) -> int:
        return len(self.interior)

    def is_boundary(self, node: Node) -> bool:
        i, j = node
        return i == 0 or j == 0 or i + j == self.n


@lru_cache(maxsize=None)
def lattice(n: int) -> TriangularLattice:
    if n < 2:
        raise ValueError(f"side length must be >= 2, got {n}")
    interior = tuple(
        (i, j) for j in range(1, n) for i in range(1, n - j)
    )  # (j, i) lexicographic
    boundary = tuple(
        (i, j)
        for j in range(n + 1)
        for i in range(n + 1 - j)
        if i == 0 or j == 0 or i + j == n
    )
    column = {node: k for k, node in enumerate(interior)}
    return TriangularLattice(n, interior, boundary, column)


def _rhombi(n: int) -> list[tuple[Node, Node, Node, Node]]:
    """All unit rhombi as (obtuse1, obtuse2, acute1, acute2).

    Ordered by orientation, then lexicographic (i, j) of the downward
    triangle whose corners are (i+1, j), (i, j+1), (i+1, j+1).
    """
    out = []
    down = [(i, j) for i in range(n - 1) for j in range(n - 1 - i)]
    for orientation in range(3):
        for i, j in down:
            if orientation == 0:
                # glued to the upward triangle below-left
                out.append(((i + 1, j), (i, j + 1), (i, j), (i + 1, j + 1)))
            elif orientation == 1:
                # glued to the upward triangle on the right
                out.append(((i + 1, j), (i + 1, j + 1), (i + 2, j), (i, j + 1)))
            else:
                # glued to the upward triangle above
                out.append(((i, j + 1), (i + 1, j + 1), (i + 1, j), (i, j + 2)))
    return out


@dataclass(frozen=True)
class HiveBoundary:
    """Integer values on the 3n boundary nodes of the side-n lattice."""

    values: dict  # Node -> int
    source: PartitionTriple

    @property
    def n(self) -> int:
        return self.source.n


def boundary_values(t: PartitionTriple) -> HiveBoundary:
    """Boundary assignment: partial sums of lambda up the left edge, then mu
    down the long edge, with nu's partial sums along the bottom."""
    n = t.n
    values: dict = {}
    acc = 0
    values[(0, 0)] = 0
    for j in range(1, n + 1):
        acc += t.lam[j - 1]
        values[(0, j)] = acc
    acc = t.lam.weight
    for i in range(1, n + 1):
        acc += t.mu[i - 1]
        values[(i, n - i)] = acc
    acc = 0
    for i in range(1, n + 1):
        acc += t.nu[i - 1]
        # (n, 0) is shared with the mu edge; weight balance makes both agree.
        values[(i, 0)] = acc
    return HiveBoundary(values, t)


@dataclass(frozen=True)
class RhombusSystem:
    """Sparse system A x - b <= 0 over interior nodes, one row per rhombus."""

    rows: tuple[Row, ...]
    b: tuple[int, ...]
    lattice: TriangularLattice
    source: PartitionTriple

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.lattice.dim


def build_rhombus_system(t: PartitionTriple) -> RhombusSystem:
    n = t.n
    lat = lattice(n)
    bdry = boundary_values(t).values
    rows: list[Row] = []
    offs: list[int] = []
    for o1, o2, a1, a2 in _rhombi(n):
        entries: list[tuple[int, int]] = []
        b_row = 0
        for node, sign in ((a1, +1), (a2, +1), (o1, -1), (o2, -1)):
            if node in lat.column:
                entries.append((lat.column[node], sign))
            else:
                b_row -= sign * bdry[node]
        entries.sort()
        rows.append(tuple(entries))
        offs.append(b_row)
    return RhombusSystem(tuple(rows), tuple(offs), lat, t)


@dataclass(frozen=True)
class Hive:
    interior: tuple[int, ...]
    boundary: HiveBoundary


@dataclass(frozen=True)
class HiveCheckReport:
    ok: bool
    min_slack: int
    violating_rows: tuple[int, ...]


def hive_check(h: Hive) -> HiveCheckReport:
    """Evaluate every rhombus inequality of h; slack = b - A x per row."""
    system = build_rhombus_system(h.boundary.source)
    if len(h.interior) != system.dim:
        raise DimensionMismatch(
            f"interior length {len(h.interior)} != {system.dim}"
        )
    slacks = [
        b - sum(sign * h.interior[col] for col, sign in row)
        for row, b in zip(system.rows, system.b)
    ]
    violations = tuple(i for i, s in enumerate(slacks) if s < 0)
    return HiveCheckReport(not violations, min(slacks, default=0), violations)


@dataclass(frozen=True)
class _DfsPlan:
    """Per-rank search plan: rows grouped by their last interior column."""

    n: int
    dim: int
    boundary_rows: tuple[int, ...]  # rows with no interior node
    # per column k: tuple of (sign_k, ((col, sign), ...) other entries, row index)
    per_column: tuple[tuple[tuple[int, Row, int], ...], ...]


@lru_cache(maxsize=None)
def _dfs_plan(n: int) -> _DfsPlan:
    lat = lattice(n)
    rows = build_rhombus_system(triple([0] * n, [0] * n, [0] * n)).rows
    boundary_rows = []
    per_column: list[list[tuple[int, Row, int]]] = [[] for _ in range(lat.dim)]
    for r, row in enumerate(rows):
        if not row:
            boundary_rows.append(r)
            continue
        last = max(col for col, _ in row)
        sign = next(s for col, s in row if col == last)
        rest = tuple((col, s) for col, s in row if col != last)
        per_column[last].append((sign, rest, r))
    return _DfsPlan(n, lat.dim, tuple(boundary_rows), tuple(map(tuple, per_column)))


class _CountWorker:
    """Depth-first interval-propagation counter over one rhombus system."""

    def __init__(self, d, b, per_column, budget):
        self.d = d
        self.b = b
        self.per_column = per_column
        self.budget = budget
        self.visits = 0
        self.values = [0] * d

    def bounds(self, k: int) -> tuple[int | None, int | None]:
        lo, hi = None, None
        values = self.values
        for sign, rest, r in self.per_column[k]:
            rhs = self.b[r] - sum(s * values[col] for col, s in rest)
            if sign > 0:
                hi = rhs if hi is None or rhs < hi else hi
            else:
                lo = -rhs if lo is None or -rhs > lo else lo
        # Hives are bounded: every column sees both an upper and a lower row.
        if lo is None or hi is None:
            raise RuntimeError(f"unbounded fiber at column {k}")
        return lo, hi

    def count(self, k: int, lo: int, hi: int) -> int:
        self.visits += hi - lo + 1
        if self.visits > self.budget:
            raise BudgetExceeded(f"exact_count exceeded budget {self.budget}")
        if k == self.d - 1:
            return hi - lo + 1
        total = 0
        for v in range(lo, hi + 1):
            self.values[k] = v
            nlo, nhi = self.bounds(k + 1)
            if nlo <= nhi:
                total += self.count(k + 1, nlo, nhi)
        return total


def exact_count(
    t: PartitionTriple,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> int:
    """Exact number of integer hives with boundary t.

    Depth-first search over interior nodes in column order; at each node the
    integer interval implied by rows whose other nodes are already assigned
    is intersected, so every row is enforced exactly once.  `budget` caps the
    number of value assignments tried (per worker when workers > 1).
    `workers` > 1 splits the first node's interval across threads; the count
    is independent of the split.
    """
    system = build_rhombus_system(t)
    plan = _dfs_plan(t.n)
    for r in plan.boundary_rows:
        if system.b[r] < 0:
            return 0
    d = plan.dim
    if d == 0:
        return 1
    probe = _CountWorker(d, system.b, plan.per_column, budget)
    lo, hi = probe.bounds(0)
    if lo > hi:
        return 0
    if workers <= 1:
        return probe.count(0, lo, hi)

    from concurrent.futures import ThreadPoolExecutor

    def chunk(vals: list[int]) -> int:
        local = _CountWorker(d, system.b, plan.per_column, budget)
        total = 0
        for v in vals:
            local.visits += 1
            if d == 1:
                total += 1
                continue
            local.values[0] = v
            nlo, nhi = local.bounds(1)
            if nlo <= nhi:
                total += local.count(1, nlo, nhi)
        return total

    buckets: list[list[int]] = [[] for _ in range(workers)]
    for idx, v in enumerate(range(lo, hi + 1)):
        buckets[idx % workers].append(v)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(chunk, buckets))


def quadratic_hive(n: int, eps_inverse: Fraction | int = 1) -> tuple[Fraction, ...]:
    """Interior values of the strictly concave quadratic hive.

    f(u, v) = (1/eps) * ((3n^3 + n^2) u + 2n^3 v - (n^2 - n)(u^2 + v^2)),
    evaluated at interior lattice coordinates (u, v) = (i, j) in column order.
    """
    if n < 3:
        raise ValueError(f"interior is empty for n < 3, got {n}")
    scale = Fraction(eps_inverse)
    lat = lattice(n)
    lin_u = 3 * n**3 + n**2
    lin_v = 2 * n**3
    quad = n**2 - n
    return tuple(
        scale * (lin_u * i + lin_v * j - quad * (i * i + j * j))
        for i, j in lat.interior
    )


def hive_to_json(h: Hive) -> str:
    t = h.boundary.source
    return json.dumps(
        {
            "n": t.n,
            "lambda": list(t.lam),
            "mu": list(t.mu),
            "nu": list(t.nu),
            "interior": list(h.interior),
        }
    )


def hive_from_json(text: str) -> Hive:
    obj = json.loads(text)
    t = triple(obj["lambda"], obj["mu"], obj["nu"])
    if t.n != obj["n"]:
        raise DimensionMismatch(f"n={obj['n']} does not match partitions")
    interior = tuple(int(v) for v in obj["interior"])
    if len(interior) != lattice(t.n).dim:
        raise DimensionMismatch("interior length does not match n")
    return Hive(interior, boundary_values(t))
