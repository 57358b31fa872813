import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from lrhive import errors
from lrhive.geometry import hive_body, lp_solve
from lrhive.hive import (
    Hive,
    boundary_values,
    build_rhombus_system,
    exact_count,
    hive_check,
    hive_from_json,
    hive_to_json,
    lattice,
    quadratic_hive,
)
from lrhive.partitions import triple

from test_partitions import triples_st

EXAMPLE = triple([2, 1, 0], [2, 1, 0], [3, 2, 1])


def brute_force_count(t) -> int:
    """Independent oracle: box from per-coordinate LPs, then direct row checks."""
    body = hive_body(t, 0)
    if body.dim == 0:
        return int(all(v >= 0 for v in body.offsets()))
    import math

    ranges = []
    for j in range(body.dim):
        e = [0] * body.dim
        e[j] = 1
        try:
            hi = lp_solve(body, e, "max").value
            lo = lp_solve(body, e, "min").value
        except errors.Infeasible:
            return 0
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    from itertools import product

    return sum(1 for point in product(*ranges) if body.contains_exact(point))


@pytest.mark.parametrize("n", range(2, 9))
def test_lattice_counts(n):
    lat = lattice(n)
    assert lat.dim == (n - 1) * (n - 2) // 2
    assert len(lat.boundary) == 3 * n
    system = build_rhombus_system(triple([0] * n, [0] * n, [0] * n))
    assert system.m == 3 * n * (n - 1) // 2


def test_boundary_example():
    values = boundary_values(EXAMPLE).values
    expected = {
        (0, 0): 0, (0, 1): 2, (0, 2): 3, (0, 3): 3,
        (1, 2): 5, (2, 1): 6, (3, 0): 6, (1, 0): 3, (2, 0): 5,
    }
    assert values == expected


def test_boundary_zero():
    values = boundary_values(triple([0, 0], [0, 0], [0, 0])).values
    assert set(values.values()) == {0}


@given(triples_st(4, cap=9))
@settings(max_examples=40)
def test_boundary_corner_consistency(t):
    values = boundary_values(t).values
    # bottom-right corner along nu equals |lambda| + |mu| along the mu edge
    assert values[(t.n, 0)] == t.lam.weight + t.mu.weight
    assert values[(0, t.n)] == t.lam.weight


def test_system_n3_shape():
    system = build_rhombus_system(EXAMPLE)
    assert system.m == 9 and system.dim == 1
    for row in system.rows:
        assert 1 <= len(row) <= 4
        assert all(sign in (-1, 1) for _, sign in row)
    assert system.b == (5, -4, -4, -4, -4, 5, -4, 5, -4)


def test_system_rows_depend_only_on_n():
    a1 = build_rhombus_system(EXAMPLE).rows
    a2 = build_rhombus_system(triple([5, 5, 0], [4, 1, 1], [9, 5, 2])).rows
    assert a1 == a2


def test_system_n2_has_no_columns():
    system = build_rhombus_system(triple([1, 0], [1, 0], [1, 1]))
    assert system.dim == 0 and system.m == 3
    assert all(row == () for row in system.rows)


@given(triples_st(4, cap=6), triples_st(4, cap=6))
@settings(max_examples=30)
def test_offsets_linear_in_boundary(t1, t2):
    b1 = build_rhombus_system(t1).b
    b2 = build_rhombus_system(t2).b
    summed = triple(
        [a + b for a, b in zip(t1.lam, t2.lam)],
        [a + b for a, b in zip(t1.mu, t2.mu)],
        [a + b for a, b in zip(t1.nu, t2.nu)],
    )
    assert build_rhombus_system(summed).b == tuple(x + y for x, y in zip(b1, b2))
    assert build_rhombus_system(t1.scaled(3)).b == tuple(3 * x for x in b1)


def test_exact_count_examples():
    assert exact_count(EXAMPLE) == 2
    assert exact_count(triple([1, 0], [1, 0], [1, 1])) == 1
    assert exact_count(triple([2, 1, 0], [2, 1, 0], [6, 0, 0])) == 0


def test_exact_count_scaled_family():
    for k in range(1, 11):
        assert exact_count(EXAMPLE.scaled(k)) == k + 1


def test_exact_count_matches_brute_force():
    cases = [
        EXAMPLE,
        EXAMPLE.scaled(3),
        triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1]),
        triple([4, 2, 1, 0], [3, 2, 1, 0], [6, 4, 2, 1]),
        triple([2, 2, 0, 0], [2, 1, 1, 0], [3, 3, 1, 1]),
    ]
    for t in cases:
        assert exact_count(t) == brute_force_count(t)


@given(triples_st(3, cap=5))
@settings(max_examples=25, deadline=None)
def test_exact_count_matches_brute_force_random(t):
    assert exact_count(t) == brute_force_count(t)


def test_budget_invariance_and_exceeded():
    wide = EXAMPLE.scaled(30)
    c1 = exact_count(wide, budget=10_000)
    c2 = exact_count(wide, budget=10_000_000)
    assert c1 == c2 == 31
    with pytest.raises(errors.BudgetExceeded):
        exact_count(wide, budget=3)


def test_workers_split_agrees():
    t = triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1])
    assert exact_count(t, workers=3) == exact_count(t)


def test_hive_check():
    ok = hive_check(Hive((4,), boundary_values(EXAMPLE)))
    assert ok.ok and ok.min_slack == 0 and ok.violating_rows == ()
    bad = hive_check(Hive((3,), boundary_values(EXAMPLE)))
    assert not bad.ok and bad.min_slack == -1 and len(bad.violating_rows) > 0
    zero = hive_check(Hive((), boundary_values(triple([0, 0], [0, 0], [0, 0]))))
    assert zero.ok
    with pytest.raises(errors.DimensionMismatch):
        hive_check(Hive((1, 2), boundary_values(EXAMPLE)))


def test_quadratic_hive_n3():
    assert quadratic_hive(3) == (Fraction(132),)


def test_quadratic_hive_scaling():
    assert quadratic_hive(4, 2) == tuple(2 * v for v in quadratic_hive(4, 1))


def test_quadratic_hive_n4():
    # direct evaluation: 208u + 128v - 12(u^2+v^2) at (1,1), (2,1), (1,2)
    vals = quadratic_hive(4)
    assert vals == (312, 484, 404)
    assert 208 * 1 + 128 * 1 - 12 * 2 == 312
    assert 208 * 2 + 128 * 1 - 12 * 5 == 484
    assert 208 * 1 + 128 * 2 - 12 * 5 == 404


def test_quadratic_hive_is_interior_for_n3():
    # built on the shift-triple boundary, the quadratic point is a real hive
    from lrhive.partitions import make_shift

    t = make_shift(3).shifted_triple()
    report = hive_check(Hive((132,), boundary_values(t)))
    assert report.ok and report.min_slack == 6


def test_hive_json_roundtrip():
    h = Hive((4,), boundary_values(EXAMPLE))
    text = hive_to_json(h)
    parsed = json.loads(text)
    assert parsed["n"] == 3 and parsed["interior"] == [4]
    back = hive_from_json(text)
    assert back.interior == h.interior
    assert back.boundary.source == EXAMPLE
    with pytest.raises(errors.DimensionMismatch):
        hive_from_json(json.dumps({**parsed, "interior": [1, 2]}))
