"""Exact rational two-phase simplex for systems A x <= b with free variables.

Entries are python ints / Fractions end to end, and Bland's rule makes every
answer deterministic: identical inputs pivot identically and return the same
vertex.  Free variables are split as x = u - v with u, v >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = int | Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(tab: list[list[Number]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    if piv == -1:  # stays in int arithmetic, the common case for hive rows
        tab[row] = [-v for v in tab[row]]
    elif piv != 1:
        inv = Fraction(1, 1) / piv
        tab[row] = [v * inv for v in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i == row:
            continue
        factor = r[col]
        if factor:
            tab[i] = [a - factor * p for a, p in zip(r, prow)]
    basis[row] = col


def _bland_min(tab: list[list[Number]], basis: list[int], allowed: int) -> str:
    """Minimize the objective stored in the last tableau row.

    `allowed` is the number of leading columns eligible to enter (this is how
    artificial columns are frozen in phase 2).  Returns OPTIMAL or UNBOUNDED.
    """
    m = len(tab) - 1
    while True:
        obj = tab[-1]  # _pivot rebinds rows, so re-read each round
        enter = -1
        for j in range(allowed):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        # Ratio test by cross-multiplication (denominators positive) keeps
        # everything in exact arithmetic.
        leave, num, den = -1, 0, 1
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                r = tab[i][-1]
                if leave < 0:
                    leave, num, den = i, r, a
                else:
                    lhs, rhs = r * den, num * a
                    if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                        leave, num, den = i, r, a
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def solve_lp(
    a: Sequence[Sequence[Number]],
    b: Sequence[Number],
    c: Sequence[Number] | None,
    sense: str = "max",
) -> LPResult:
    """Optimize c.x over {x : a x <= b}, x free.  c=None solves feasibility only."""
    m = len(a)
    d = len(a[0]) if m else (len(c) if c else 0)
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be max|min, got {sense!r}")

    nsplit = 2 * d
    nreal = nsplit + m  # u, v, slacks
    art_of_row = {}
    ncols = nreal
    for i in range(m):
        if b[i] < 0:
            art_of_row[i] = ncols
            ncols += 1

    tab: list[list[Number]] = []
    basis: list[int] = []
    for i in range(m):
        row: list[Number] = [Fraction(0)] * (ncols + 1)
        neg = i in art_of_row
        sgn = -1 if neg else 1
        for j in range(d):
            v = a[i][j]
            if v:
                row[j] = sgn * v
                row[d + j] = -sgn * v
        row[nsplit + i] = sgn
        row[-1] = sgn * b[i]
        if neg:
            row[art_of_row[i]] = 1
            basis.append(art_of_row[i])
        else:
            basis.append(nsplit + i)
        tab.append(row)

    # Phase 1: minimize the sum of artificials.
    if art_of_row:
        obj: list[Number] = [Fraction(0)] * (ncols + 1)
        for col in art_of_row.values():
            obj[col] = Fraction(1)
        for i, col in enumerate(basis):
            if col in art_of_row.values():
                obj = [o - t for o, t in zip(obj, tab[i])]
        tab.append(obj)
        _bland_min(tab, basis, nreal)  # phase 1 is always bounded
        if tab[-1][-1] != 0:  # obj row holds -(current value)
            return LPResult(INFEASIBLE)
        tab.pop()
        # Drive leftover degenerate artificials out of the basis.
        arts = set(art_of_row.values())
        for i in range(m - 1, -1, -1):
            if basis[i] in arts:
                col = next((j for j in range(nreal) if tab[i][j] != 0), None)
                if col is None:
                    del tab[i]
                    del basis[i]
                    m -= 1
                else:
                    _pivot(tab, basis, i, col)

    if c is None:
        x = _extract(tab, basis, d)
        return LPResult(OPTIMAL, x, Fraction(0))

    # Phase 2: minimize -c.x (max) or c.x (min).
    sgn = -1 if sense == "max" else 1
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(d):
        v = Fraction(c[j])
        obj[j] = sgn * v
        obj[d + j] = -sgn * v
    for i, col in enumerate(basis):
        if obj[col]:
            factor = obj[col]
            obj = [o - factor * t for o, t in zip(obj, tab[i])]
    tab.append(obj)
    status = _bland_min(tab, basis, nreal)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = _extract(tab[:-1], basis, d)
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)


def _extract(tab: list[list[Number]], basis: list[int], d: int) -> tuple[Fraction, ...]:
    vals: dict[int, Fraction] = {col: Fraction(tab[i][-1]) for i, col in enumerate(basis)}
    return tuple(vals.get(j, Fraction(0)) - vals.get(d + j, Fraction(0)) for j in range(d))


def lp_feasible(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> bool:
    """Phase-1 feasibility of a x <= b (x free)."""
    if all(v >= 0 for v in b):
        return True  # x = 0 is feasible
    return solve_lp(a, b, None).status == OPTIMAL
