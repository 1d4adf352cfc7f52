from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from telegraph_spline.exceptions import GridDomainError
from telegraph_spline.quintic_basis import UniformGrid, basis_eval, local_basis, nodal_stencils

TABLE = {
    0: (0, 1, 26, 66, 26, 1, 0),
    1: (0, 5, 50, 0, -50, -5, 0),
    2: (0, 20, 40, -120, 40, 20, 0),
}


@pytest.mark.parametrize("order", [0, 1, 2])
def test_nodal_values_exact_on_unit_spacing(order):
    grid = UniformGrid(0.0, 10.0, 10)
    i = 5
    got = [basis_eval(grid, i, grid.knot(i + d), order) for d in range(-3, 4)]
    assert got == list(TABLE[order])


@pytest.mark.parametrize("order", [0, 1, 2])
@pytest.mark.parametrize("i", [-2, -1, 0, 3, 11, 12])
def test_nodal_values_scaled_by_h(order, i):
    grid = UniformGrid(-0.3, 1.7, 10)
    h = grid.h
    for d in range(-3, 4):
        x = grid.knot(i + d)
        if not grid.a <= x <= grid.b:
            continue
        assert basis_eval(grid, i, x, order) * h**order == pytest.approx(
            TABLE[order][d + 3], abs=1e-10
        )


def test_support_boundary_is_zero(unit_grid):
    assert basis_eval(unit_grid, 5, unit_grid.knot(8)) == 0.0
    assert basis_eval(unit_grid, 5, unit_grid.knot(2)) == 0.0
    assert basis_eval(unit_grid, 2, 0.95) == 0.0


def test_off_node_value_against_exact_polynomial(unit_grid):
    # x = 0.45 lies in [x_4, x_5); B_5 uses its third piece there
    h, x = Fraction(1, 10), Fraction(45, 100)
    oracle = ((x - 2 * h) ** 5 - 6 * (x - 3 * h) ** 5 + 15 * (x - 4 * h) ** 5) / h**5
    assert oracle == Fraction(841, 16)
    assert basis_eval(unit_grid, 5, 0.45) == pytest.approx(52.5625, rel=1e-13)


def test_stencils():
    st_ = nodal_stencils()
    assert st_.value.weights == (1, 26, 66, 26, 1) and st_.value.h_power == 0
    assert st_.first.weights == (-5, -50, 0, 50, 5) and st_.first.h_power == -1
    assert st_.second.weights == (20, 40, -120, 40, 20) and st_.second.h_power == -2


@pytest.mark.parametrize("bad_x", [-0.01, 1.01, np.nan])
def test_outside_domain_raises(unit_grid, bad_x):
    with pytest.raises(GridDomainError):
        basis_eval(unit_grid, 3, bad_x)


def test_invalid_order_and_index(unit_grid):
    with pytest.raises(GridDomainError):
        basis_eval(unit_grid, 3, 0.5, order=3)
    with pytest.raises(GridDomainError):
        basis_eval(unit_grid, 13, 0.5)


def test_endpoint_within_slack_is_accepted(unit_grid):
    assert basis_eval(unit_grid, 9, 1.0 + 1e-14) == pytest.approx(26.0)


@pytest.mark.parametrize("N", [4, 0])
def test_grid_needs_five_intervals(N):
    with pytest.raises(GridDomainError):
        UniformGrid(0.0, 1.0, N)


def test_grid_spacing_invariant():
    grid = UniformGrid(0.25, 3.0, 37)
    assert grid.h > 0
    assert abs(grid.h * grid.N - (grid.b - grid.a)) <= 1e-12 * (grid.b - grid.a)


def _all_basis(grid, x, order=0):
    return np.array([basis_eval(grid, i, x, order) for i in range(-2, grid.N + 3)])


@settings(max_examples=200, deadline=None)
@given(
    x=st.floats(0.0, 1.0),
    N=st.integers(5, 40),
)
def test_partition_of_unity_and_abs_bound(x, N):
    grid = UniformGrid(0.0, 1.0, N)
    values = _all_basis(grid, x)
    assert abs(values.sum() - 120.0) <= 1e-9
    assert np.abs(values).sum() <= 186.0
    h = grid.h
    assert abs(_all_basis(grid, x, 1).sum()) <= 1e-9 / h**2
    assert abs(_all_basis(grid, x, 2).sum()) <= 1e-9 / h**2


@pytest.mark.parametrize("i", [-2, 0, 4, 7, 12])
@pytest.mark.parametrize("order", [1, 2])
def test_derivatives_match_finite_differences(unit_grid, i, order):
    h = unit_grid.h
    step = 1e-6 * h
    rng = np.random.default_rng(i + 10 * order)
    lo, hi = max(0.0, unit_grid.knot(i - 3)), min(1.0, unit_grid.knot(i + 3))
    for x in rng.uniform(lo + 2 * step, hi - 2 * step, 20):
        lower = basis_eval(unit_grid, i, x - step, order - 1)
        upper = basis_eval(unit_grid, i, x + step, order - 1)
        fd = (upper - lower) / (2 * step)
        exact = basis_eval(unit_grid, i, x, order)
        assert fd == pytest.approx(exact, rel=1e-5, abs=1e-5 * 66 / h**order)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_continuity_across_knots(unit_grid, order):
    scale = unit_grid.h**order
    for i in range(-2, 13):
        for j in range(max(1, i - 2), min(unit_grid.N, i + 3)):
            x = unit_grid.knot(j)
            left = basis_eval(unit_grid, i, np.nextafter(x, -np.inf), order)
            right = basis_eval(unit_grid, i, x, order)
            assert abs(left - right) * scale <= 1e-9


def test_local_basis_matches_scalar(unit_grid):
    xs = np.linspace(0, 1, 37)
    j, vals = local_basis(unit_grid, xs, 2)
    for x, jj, row in zip(xs, j, vals):
        want = [basis_eval(unit_grid, jj - 2 + m, x, 2) for m in range(6)]
        np.testing.assert_allclose(row, want, rtol=1e-12, atol=1e-9)
