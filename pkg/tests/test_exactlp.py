from fractions import Fraction

from lrhive.exactlp import INFEASIBLE, OPTIMAL, UNBOUNDED, lp_feasible, solve_lp


def test_box_lp():
    a = [[1, 0], [-1, 0], [0, 1], [0, -1]]
    res = solve_lp(a, [1, 1, 1, 1], [1, 0], "max")
    assert res.status == OPTIMAL and res.value == 1


def test_hive_interval_lp():
    a = [[1]] * 3 + [[-1]] * 6
    b = [5] * 3 + [-4] * 6
    assert solve_lp(a, b, [1], "max").value == 5
    assert solve_lp(a, b, [1], "min").value == 4


def test_infeasible_and_feasible():
    assert solve_lp([[1], [-1]], [-1, 0], [1]).status == INFEASIBLE
    assert not lp_feasible([[1], [-1]], [-1, 0])
    assert lp_feasible([[1], [-1]], [1, 0])
    assert lp_feasible([[1], [-1]], [3, -3])  # x == 3


def test_unbounded():
    assert solve_lp([[-1]], [0], [1], "max").status == UNBOUNDED


def test_degenerate_duplicate_rows():
    a = [[1, 1], [1, 1], [-1, 0], [0, -1]]
    res = solve_lp(a, [1, 1, 0, 0], [1, 1], "max")
    assert res.value == 1


def test_equality_via_opposed_rows():
    res = solve_lp([[1], [-1]], [3, -3], [1], "max")
    assert res.value == 3 and res.x == (3,)


def test_simplex_5d():
    a = [[1] * 5] + [[-(i == j) for j in range(5)] for i in range(5)]
    assert solve_lp(a, [1] + [0] * 5, [1] * 5, "max").value == 1


def test_fractional_data():
    res = solve_lp([[1], [-1]], [Fraction(7, 2), Fraction(-3, 2)], [Fraction(2, 3)], "max")
    assert res.value == Fraction(7, 3)
    assert res.x == (Fraction(7, 2),)


def test_negative_objective_and_min_sense():
    a = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1]]
    b = [5, -2, 5, -2, 6]
    res = solve_lp(a, b, [1, 2], "max")
    assert res.value == 10 and res.x == (2, 4)
    res_min = solve_lp(a, b, [1, 2], "min")
    assert res_min.value == 6 and res_min.x == (2, 2)


def test_deterministic_vertex():
    a = [[1, 1], [1, 1], [-1, 0], [0, -1]]
    runs = {solve_lp(a, [1, 1, 0, 0], [1, 1], "max").x for _ in range(5)}
    assert len(runs) == 1
