"""Acceptance criteria, one test each, at the stated tolerances.

Every test logs a PASS/FAIL line through ``record_criterion``; the lines are
printed in a summary section at the end of the pytest run.
"""

import numpy as np
import pytest

from telegraph_spline.banded import build
from telegraph_spline.metrics import nodal_errors, observed_order
from telegraph_spline.problems import (
    constant_problem,
    example1,
    example2,
    example3,
    linear_problem,
    zero_problem,
)
from telegraph_spline.quintic_basis import UniformGrid, basis_eval, nodal_stencils
from telegraph_spline.scheme import GammaChoice, SchemeParams, solve_to_time
from telegraph_spline.spline_interp import eval_spline, fit_interpolant, nodal_values

from oracles import dense_solve

PLAIN = GammaChoice.PLAIN_K
TWO_SIN = GammaChoice.TWO_SIN_HALF_K


def final_level(problem, N, k, t_final, choice=PLAIN):
    params = SchemeParams(N=N, k=k, gamma_choice=choice, t_final=t_final)
    return solve_to_time(problem, params)[-1]


def final_error(problem, N, k, t_final, choice=PLAIN):
    t, coeffs = final_level(problem, N, k, t_final, choice)
    return nodal_errors(coeffs, problem.exact, t)


def test_ac1_example1_pointwise(record_criterion):
    p = example1()
    t, coeffs = final_level(p, 100, 1 / 200, 0.5)
    x = np.array([0.2, 0.4])
    err = np.abs(eval_spline(coeffs, x) - p.exact(x, t))
    ok = 1.1e-5 <= err[0] <= 1.0e-4 and 5.33e-5 / 3 <= err[1] <= 3 * 5.33e-5
    record_criterion("AC1 pointwise error", ok, f"|e(0.2)|={err[0]:.4e}, |e(0.4)|={err[1]:.4e}")
    assert ok


def test_ac2a_example2_max_error_coarse_step(record_criterion):
    err = final_error(example2(alpha=20.0, beta=10.0), 21, 0.01, 0.5).l_inf
    ok = 5e-7 <= err <= 1e-5
    record_criterion("AC2a max error, second example, k=0.01", ok, f"{err:.4e} (want in [5e-7, 1e-5])")
    assert ok


def test_ac2b_example2_max_error_fine_step(record_criterion):
    err = final_error(example2(alpha=20.0, beta=10.0), 21, 1e-4, 0.5).l_inf
    ok = err <= 1e-8
    record_criterion("AC2b max error, second example, k=1e-4", ok, f"{err:.4e} (want <= 1e-8)")
    assert ok


def test_ac3_example3_max_error(record_criterion):
    err = final_error(example3(alpha=10.0, beta=5.0), 21, 0.001, 0.5).l_inf
    ok = err <= 5e-8
    record_criterion("AC3 max error, third example", ok, f"{err:.4e} (want <= 5e-8)")
    assert ok


def test_ac4_temporal_improvement(record_criterion):
    p = example1()
    coarse = final_error(p, 100, 0.01, 0.5).l2
    fine = final_error(p, 400, 0.001, 0.5).l2
    ratio = coarse / fine
    ok = ratio >= 50
    record_criterion("AC4 L2 improvement", ok, f"{coarse:.4e} -> {fine:.4e}, ratio {ratio:.1f} (want >= 50)")
    assert ok


def test_ac5_spatial_order(record_criterion):
    p = example1()
    pairs = [(1 / N, final_error(p, N, 1e-4, 0.5).l_inf) for N in (25, 50, 100)]
    orders = observed_order(pairs)
    ok = orders[-1] >= 1.8
    detail = ", ".join(f"N={round(1 / h)}: {e:.3e}" for h, e in pairs)
    record_criterion("AC5 spatial order", ok, f"{detail}; final order {orders[-1]:.3f} (want >= 1.8)")
    assert ok


def test_ac6_interpolation_orders(record_criterion):
    f = [lambda x: np.sin(2 * x), lambda x: 2 * np.cos(2 * x), lambda x: -4 * np.sin(2 * x)]
    xs = np.linspace(0.0, 1.0, 2001)
    errors = {0: [], 1: [], 2: []}
    for N in (20, 40, 80):
        grid = UniformGrid(0.0, 1.0, N)
        s = fit_interpolant(grid, f[0](grid.nodes), f[1](0.0), f[1](1.0))
        for j in range(3):
            errors[j].append((grid.h, np.max(np.abs(eval_spline(s, xs, j) - f[j](xs)))))
    orders = {j: observed_order(errors[j]) for j in range(3)}
    ok = all(min(orders[j]) >= 3.8 - j for j in range(3))
    detail = "; ".join(f"d{j}: " + ", ".join(f"{o:.2f}" for o in orders[j]) for j in range(3))
    record_criterion("AC6 interpolation orders", ok, detail + " (want >= 3.8, 2.8, 1.8)")
    assert ok


def test_ac7_basis_invariants(record_criterion):
    grid = UniformGrid(0.0, 1.0, 10)
    rng = np.random.default_rng(7)
    xs = rng.uniform(0.0, 1.0, 1000)
    sums, abs_sums = [], []
    for x in xs:
        vals = [basis_eval(grid, i, x) for i in range(-2, grid.N + 3)]
        sums.append(sum(vals))
        abs_sums.append(sum(abs(v) for v in vals))
    table = nodal_stencils()
    expected = {
        "value": (1, 26, 66, 26, 1),
        "first": (-5, -50, 0, 50, 5),
        "second": (20, 40, -120, 40, 20),
    }
    stencils_ok = all(tuple(getattr(table, key).weights) == w for key, w in expected.items())
    sum_dev = max(abs(s - 120) for s in sums)
    ok = sum_dev <= 1e-9 and max(abs_sums) <= 186 and stencils_ok
    record_criterion(
        "AC7 basis invariants", ok,
        f"max |sum - 120| = {sum_dev:.2e}, max sum|B| = {max(abs_sums):.6f}, 15 stencil entries exact: {stencils_ok}",
    )
    assert ok


def test_ac8_banded_against_dense(record_criterion):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 201))
        rows = []
        for i in range(n):
            row = {j: rng.uniform(-1, 1) for j in range(max(0, i - 2), min(n, i + 3))}
            row[i] = sum(abs(v) for v in row.values()) + rng.uniform(0.1, 1.0)
            rows.append(row)
        dense = np.zeros((n, n))
        for i, row in enumerate(rows):
            for j, v in row.items():
                dense[i, j] = v
        rhs = rng.uniform(-1, 1, n)
        got = build(n, rows).factor().solve(rhs)
        want = np.array(dense_solve(dense.tolist(), rhs.tolist()))
        worst = max(worst, np.max(np.abs(got - want)) / max(np.max(np.abs(want)), 1e-300))
    ok = worst <= 1e-9
    record_criterion("AC8 banded vs dense oracle", ok, f"worst relative difference {worst:.2e} over 50 systems")
    assert ok


@pytest.mark.parametrize("choice", [PLAIN, TWO_SIN])
def test_ac9_exact_reproduction(choice, record_criterion):
    k = 0.01
    results = {}
    for name, p, tol in (
        ("zero", zero_problem(), 1e-12),
        ("constant", constant_problem(2.5, alpha=3.0, beta=2.0), 1e-9),
        ("linear", linear_problem(-1.5, alpha=3.0, beta=2.0), 1e-9),
    ):
        snaps = solve_to_time(p, SchemeParams(N=12, k=k, gamma_choice=choice, t_final=100 * k))
        assert len(snaps) == 101
        worst = max(
            np.max(np.abs(nodal_values(c) - p.exact(c.grid.nodes, t))) for t, c in snaps
        )
        results[name] = (worst, worst <= tol)
    ok = all(passed for _, passed in results.values())
    detail = ", ".join(f"{name}: {w:.1e}" for name, (w, _) in results.items())
    record_criterion(f"AC9 exact reproduction [{choice.value}]", ok, detail + " over 100 steps")
    assert ok


def test_ac10_gamma_agreement(record_criterion):
    p = example1()
    _, plain = final_level(p, 100, 1e-3, 0.5, PLAIN)
    _, trig = final_level(p, 100, 1e-3, 0.5, TWO_SIN)
    diff = float(np.max(np.abs(nodal_values(plain) - nodal_values(trig))))
    ok = diff <= 1e-8
    record_criterion("AC10 gamma-choice agreement", ok, f"max difference {diff:.3e} (want <= 1e-8)")
    assert ok
