import numpy as np
import pytest
from scipy.optimize import linprog

from confheat.errors import SolverError
from confheat.rng import substream
from confheat.simplex import solve_lp


def test_simple_known_lp():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> optimum at (1.6, 1.2)
    res = solve_lp([1.0, 1.0], [[1.0, 2.0], [3.0, 1.0]], [4.0, 6.0])
    assert res.value == pytest.approx(2.8, abs=1e-9)
    assert np.allclose(res.x, [1.6, 1.2], atol=1e-9)


def test_zero_objective_and_empty():
    res = solve_lp([0.0, 0.0], [[1.0, 0.0]], [1.0])
    assert res.value == 0.0
    with pytest.raises(SolverError):
        solve_lp([1.0], np.zeros((0, 1)), np.zeros(0))


def test_unbounded_detected():
    with pytest.raises(SolverError):
        solve_lp([1.0, 0.0], [[0.0, 1.0]], [1.0])


def test_degenerate_lp_terminates():
    # multiple constraints active at the optimum
    A = [[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
    b = [1.0, 1.0, 1.0, 2.0]
    res = solve_lp([1.0, 1.0], A, b)
    assert res.value == pytest.approx(2.0, abs=1e-9)


def test_random_lps_against_scipy():
    rng = substream(99, 4)
    for trial in range(40):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(2, 12))
        A = rng.uniform(-1.0, 2.0, size=(m, n))
        b = rng.uniform(0.1, 3.0, size=m)
        c = rng.uniform(-1.0, 1.0, size=n)
        ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
        try:
            mine = solve_lp(c, A, b)
        except SolverError:
            assert ref.status == 3  # unbounded
            continue
        assert ref.status == 0
        assert mine.value == pytest.approx(-ref.fun, abs=1e-8)
