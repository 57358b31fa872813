import math

import pytest

from lrhive.geometry import (
    cube,
    dikin_metric,
    facet_center,
    hive_body,
    rounding_transform,
    simplex_body,
)
from lrhive.partitions import triple
from lrhive.volume import (
    estimate_volume,
    exact_volume_oracle,
    make_schedule,
    unit_ball_volume,
)

EXAMPLE_Q = hive_body(triple([2, 1, 0], [2, 1, 0], [3, 2, 1]), 2)


def rounding_for(body):
    return rounding_transform(dikin_metric(body, facet_center(body)))


def test_unit_ball_volume():
    assert unit_ball_volume(1) == pytest.approx(2.0)
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)


def test_schedule_shape():
    sched = make_schedule(8, 16, 0.1, 0.1)
    assert sched.phases == 48
    assert sched.radii[0] == 1.0
    assert sched.radii[-1] >= 16**1.5
    assert sched.samples_per_phase == math.ceil(32 * 48 * math.log(960) / 0.01)
    # consecutive ball-volume ratio is exactly 2, so body ratios are <= 2
    assert sched.radii[1] / sched.radii[0] == pytest.approx(2 ** (1 / 8))


def test_oracle_interval_exact():
    est = exact_volume_oracle(EXAMPLE_Q, 5000, seed=1)
    assert est.value == 5.0 and est.stderr == 0.0  # box equals the body


def test_oracle_triangle():
    est = exact_volume_oracle(simplex_body(2), 100_000, seed=2)
    assert abs(est.value - 0.5) <= 3 * est.stderr + 1e-9


def test_estimate_interval():
    est = estimate_volume(EXAMPLE_Q, rounding_for(EXAMPLE_Q), 0.1, 0.1, seed=1)
    assert est.value == pytest.approx(5.0, rel=0.1)


def test_estimate_cube3():
    body = cube(3, 0, 1)
    est = estimate_volume(body, rounding_for(body), 0.15, 0.2, seed=4)
    assert est.value == pytest.approx(1.0, rel=0.15)


def test_phase_ratio_band():
    body = cube(3, 0, 1)
    est = estimate_volume(body, rounding_for(body), 0.15, 0.2, seed=4)
    for phase in est.phases:
        assert 0.3 <= phase["ratio"] <= 1.0
        assert set(phase) == {"phase", "radius", "ratio", "samples"}


def test_determinant_bookkeeping():
    est = estimate_volume(EXAMPLE_Q, rounding_for(EXAMPLE_Q), 0.2, 0.2, seed=3)
    assert est.value * est.det_t == pytest.approx(est.rounded_volume, rel=1e-12)


def test_scaling_equivariance():
    body = cube(2, 0, 1)
    doubled = body.scaled(2)
    eps = 0.1
    v1 = estimate_volume(body, rounding_for(body), eps, 0.1, seed=6).value
    v2 = estimate_volume(doubled, rounding_for(doubled), eps, 0.1, seed=6).value
    assert v2 / v1 == pytest.approx(4.0, rel=3 * eps)


def test_degenerate_dimension_zero():
    body = hive_body(triple([1, 0], [1, 0], [1, 1]), 2)
    est = estimate_volume(body, None, 0.1, 0.1, seed=0)
    assert est.degenerate and est.value == 1.0


def test_estimator_agrees_with_oracle_n4():
    q = hive_body(triple([3, 2, 1, 0], [3, 2, 1, 0], [5, 4, 2, 1]), 2)
    est = estimate_volume(q, rounding_for(q), 0.1, 0.1, seed=8)
    oracle = exact_volume_oracle(q, 400_000, seed=9)
    band = 3 * math.hypot(oracle.stderr, 0.05 * oracle.value)
    assert abs(est.value - oracle.value) <= band


def test_seed_determinism():
    a = estimate_volume(EXAMPLE_Q, rounding_for(EXAMPLE_Q), 0.2, 0.2, seed=11)
    b = estimate_volume(EXAMPLE_Q, rounding_for(EXAMPLE_Q), 0.2, 0.2, seed=11)
    assert a.value == b.value
