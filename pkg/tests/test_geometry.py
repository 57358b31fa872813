import json
import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from lrhive import errors
from lrhive.geometry import (
    HPolytope,
    body_from_json,
    body_to_json,
    chebyshev_center,
    cube,
    dikin_metric,
    facet_center,
    feasible,
    hive_body,
    lp_solve,
    positivity,
    rounding_transform,
    simplex_body,
)
from lrhive.partitions import triple

EXAMPLE = triple([2, 1, 0], [2, 1, 0], [3, 2, 1])


def test_lp_examples():
    c2 = cube(2)
    assert lp_solve(c2, [1, 0], "max").value == 1
    p = hive_body(EXAMPLE, 0)
    assert lp_solve(p, [1], "max").value == 5
    assert lp_solve(p, [1], "min").value == 4
    with pytest.raises(errors.Infeasible):
        lp_solve(hive_body(EXAMPLE, -2), [1], "max")


def test_feasibility_trio():
    assert feasible(hive_body(EXAMPLE, 0))
    assert not feasible(hive_body(triple([2, 1, 0], [2, 1, 0], [6, 0, 0]), 0))
    assert feasible(hive_body(EXAMPLE, 2))


def test_positivity_examples():
    assert positivity(EXAMPLE)
    assert positivity(triple([1, 0], [1, 0], [2, 0]))
    assert not positivity(triple([2, 1, 0], [2, 1, 0], [6, 0, 0]))


def test_slack_monotonicity():
    p = hive_body(EXAMPLE, 0)
    q = hive_body(EXAMPLE, 2)
    for x in ([4], [5], [Fraction(9, 2)]):
        assert p.contains_exact(x)
        assert q.contains_exact(x)
    # Q-only points
    for x in ([3], [7]):
        assert not p.contains_exact(x)
        assert q.contains_exact(x)


def test_facet_center_interval():
    q = hive_body(EXAMPLE, 2)  # the interval [2, 7]
    assert facet_center(q) == (Fraction(9, 2),)


def test_facet_center_cube_interior():
    c = cube(3)
    x0 = facet_center(c)
    assert all(Fraction(-1) < v < Fraction(1) for v in x0)


def test_facet_center_flat():
    flat = HPolytope((((0, 1),), ((0, -1),)), (0, 0), 0, 1)
    with pytest.raises(errors.FlatBody):
        facet_center(flat)


def test_dikin_metric_square():
    m = dikin_metric(cube(2), (Fraction(0), Fraction(0)))
    assert np.allclose(m.H, 2 * np.eye(2))


def test_dikin_metric_unit_interval():
    m = dikin_metric(cube(1, 0, 1), (Fraction(1, 2),))
    assert np.allclose(m.H, [[8.0]])


def test_dikin_metric_boundary():
    with pytest.raises(errors.OnBoundary):
        dikin_metric(cube(1, 0, 1), (Fraction(1),))


def test_dikin_metric_exact():
    m = dikin_metric(cube(2), (Fraction(0), Fraction(0)), exact=True)
    assert m.exact_h == ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(2)))


def test_rounding_transforms():
    m = dikin_metric(cube(2), (Fraction(0), Fraction(0)))
    r = rounding_transform(m)
    assert np.allclose(r.T, math.sqrt(2) * np.eye(2))
    from lrhive.geometry import DikinMetric

    r2 = rounding_transform(DikinMetric(np.zeros(2), np.diag([4.0, 9.0])))
    assert np.allclose(r2.T, np.diag([2.0, 3.0]))
    assert r2.det_T == pytest.approx(6.0)
    h_inv = r2.T_inv @ r2.T_inv.T
    assert np.allclose(h_inv, np.linalg.inv(np.diag([4.0, 9.0])), rtol=1e-9)


def test_rounding_not_positive_definite():
    from lrhive.geometry import DikinMetric

    with pytest.raises(errors.NotPositiveDefinite):
        rounding_transform(DikinMetric(np.zeros(2), np.array([[1.0, 2.0], [2.0, 1.0]])))


def test_chebyshev_examples():
    assert chebyshev_center(cube(2)).radius == 1
    ball = chebyshev_center(hive_body(EXAMPLE, 0))
    assert ball.radius == Fraction(1, 2)
    assert ball.center == (Fraction(9, 2),)
    s2 = chebyshev_center(simplex_body(2))
    assert float(s2.radius) == pytest.approx(1 / (2 + math.sqrt(2)), abs=1e-12)


def _lattice_points(body):
    import math as m

    ranges = []
    for j in range(body.dim):
        e = [0] * body.dim
        e[j] = 1
        ranges.append(
            range(
                m.ceil(lp_solve(body, e, "min").value),
                m.floor(lp_solve(body, e, "max").value) + 1,
            )
        )
    return [z for z in product(*ranges) if body.contains_exact(z)]


@pytest.mark.parametrize(
    "t",
    [EXAMPLE, triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1])],
)
def test_half_unit_perturbations_stay_in_q(t):
    # every lattice point of P, pushed to any corner of its half-unit cube,
    # stays in Q: rows have l1 norm <= 4, so each row moves by at most 2
    p = hive_body(t, 0)
    q = hive_body(t, 2)
    half = Fraction(1, 2)
    for z in _lattice_points(p):
        for signs in product((-1, 1), repeat=p.dim):
            probe = tuple(zi + s * half for zi, s in zip(z, signs))
            assert q.contains_exact(probe)


def test_symmetrized_chord_identity():
    q = hive_body(triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1]), 2)
    x0 = facet_center(q)
    metric = dikin_metric(q, x0)
    a, off = q.dense()
    res = off - a @ metric.x0
    rng = np.random.default_rng(0)
    for _ in range(20):
        u = rng.standard_normal(q.dim)
        u /= np.linalg.norm(u)
        t_ell = 1.0 / math.sqrt(u @ metric.H @ u)
        inv_t2 = sum((a[i] @ u) ** 2 / res[i] ** 2 for i in range(q.m))
        assert abs(1.0 / t_ell**2 - inv_t2) <= 1e-9 * inv_t2
        t_min = min(
            res[i] / abs(a[i] @ u) for i in range(q.m) if abs(a[i] @ u) > 1e-12
        )
        assert t_min / math.sqrt(q.m) <= t_ell * (1 + 1e-12)
        assert t_ell <= t_min * (1 + 1e-12)


def test_rounded_body_direction_bounds_small():
    # necessary condition of the rounding claim on a handful of directions
    q = hive_body(triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1]), 2)
    x0 = facet_center(q)
    rmap = rounding_transform(dikin_metric(q, x0))
    rng = np.random.default_rng(3)
    for _ in range(20):
        u = rng.standard_normal(q.dim)
        u /= np.linalg.norm(u)
        w = rmap.T.T @ u
        w_rat = [Fraction(v).limit_denominator(10**6) for v in w]
        val = lp_solve(q, w_rat, "max").value
        val -= sum(wi * xi for wi, xi in zip(w_rat, x0))
        u_eff = rmap.T_inv.T @ np.array([float(v) for v in w_rat])
        scale = np.linalg.norm(u_eff)
        assert float(val) >= scale * (1 - 1e-9)
        assert float(val) <= scale * q.m**1.5 * (1 + 1e-9)


def test_body_json_roundtrip():
    q = hive_body(EXAMPLE, 2)
    assert body_from_json(body_to_json(q)) == q
    frac = HPolytope((((0, 1),),), (Fraction(1, 3),), Fraction(1, 2), 1)
    assert body_from_json(body_to_json(frac)) == frac
    parsed = json.loads(body_to_json(frac))
    assert parsed["b"] == ["1/3"] and parsed["slack"] == "1/2"


def test_scaled_body():
    q = hive_body(EXAMPLE, 2)
    q2 = q.scaled(2)
    assert q2.contains_exact([14])  # 2 * 7 is the new upper endpoint
    assert not q2.contains_exact([15])
