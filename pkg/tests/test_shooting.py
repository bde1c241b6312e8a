"""Tests for the radial shooting solver."""

import numpy as np
import pytest

from exceptions import InvalidInputError, NoZeroError, NoDataError
from models.params import SteklovParams
from models.options import IntegratorOptions, ShootingOptions
from radial.radial_core import check_monotonicity
from radial.shooting import (
    series_state, integrate_ivp, steklov_residual, scan_residuals, count_roots,
    solve_radial, rescale, deficiency_profile, boundary_limits, beta_ladder,
    ZERO, ESCAPE,
)


# -----------------------------------------------------------------------------
# Parameters and initial value problem
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("sigma", [-1.0, -2.0])
def test_params_reject_sigma_outside_window(sigma):
    with pytest.raises(InvalidInputError):
        SteklovParams(3.0, sigma)


def test_params_collect_every_violation():
    params = SteklovParams(3.0, 1.0)
    object.__setattr__(params, "p", 1.0)
    object.__setattr__(params, "R", -1.0)
    fields = [name for name, _ in params.violations()]
    assert fields == ["p", "R"]


def test_series_state_matches_taylor_data():
    u, du, v, dv = series_state(3.0, 2.0, -4.0, 0.1)
    assert u == pytest.approx(2.0 - 4.0 * 0.01 / 4.0 + 8.0 * 1e-4 / 64.0)
    assert du == pytest.approx(-4.0 * 0.1 / 2.0 + 8.0 * 1e-3 / 16.0)
    assert v == pytest.approx(-4.0 + 8.0 * 0.01 / 4.0)
    assert dv == pytest.approx(8.0 * 0.1 / 2.0)


def test_ivp_with_zero_laplacian_never_vanishes():
    trajectory = integrate_ivp(3.0, 1.0, 0.0)
    assert trajectory.status == ESCAPE
    assert not trajectory.has_zero
    assert trajectory.r0 is None


def test_ivp_with_negative_beta_has_first_zero():
    trajectory = integrate_ivp(3.0, 1.0, -4.0)
    assert trajectory.status == ZERO
    assert trajectory.r0 > 0.0
    u, du, _, _ = trajectory.end_state
    assert abs(u) <= 1e-10
    assert du < 0.0


def test_ivp_follows_series_near_origin():
    options = IntegratorOptions()
    trajectory = integrate_ivp(3.0, 1.0, -4.0, options)
    r = 0.5 * options.eps
    assert np.allclose(trajectory.state_at(r), series_state(3.0, 1.0, -4.0, r))


def test_ivp_rejects_nonpositive_alpha():
    with pytest.raises(InvalidInputError):
        integrate_ivp(3.0, 0.0, -4.0)


def test_ivp_rejects_linear_exponent():
    with pytest.raises(InvalidInputError):
        integrate_ivp(1.0, 1.0, -4.0)


# -----------------------------------------------------------------------------
# Residual and scan
# -----------------------------------------------------------------------------

def test_navier_residual_is_laplacian_at_zero():
    q, trajectory = steklov_residual(3.0, 1.0, -4.0)
    _, _, v, _ = trajectory.end_state
    assert q == pytest.approx(v, abs=1e-14)


def test_residual_at_other_sigma():
    q, trajectory = steklov_residual(3.0, 0.0, -4.0)
    _, du, v, _ = trajectory.end_state
    assert q == pytest.approx(v - du / trajectory.r0, rel=1e-12)


def test_residual_without_zero_raises():
    with pytest.raises(NoZeroError) as caught:
        steklov_residual(3.0, 1.0, 0.0)
    assert caught.value.beta == 0.0


def test_residual_is_continuous_in_beta(cubic_solution):
    beta = cubic_solution.beta_star
    q, _ = steklov_residual(3.0, 1.0, beta)
    steps = [abs(beta) * scale for scale in (1e-2, 1e-3, 1e-4)]
    changes = [abs(steklov_residual(3.0, 1.0, beta - step)[0] - q) for step in steps]
    for coarse, fine in zip(changes, changes[1:]):
        assert fine < 0.2 * coarse


def test_scan_rejects_unordered_grid():
    with pytest.raises(InvalidInputError):
        scan_residuals(3.0, 1.0, [-1.0, -2.0])


def test_count_roots_on_quadratic_problem():
    grid = -np.geomspace(50.0, 0.01, 200)
    assert count_roots(SteklovParams(2.0, 0.0), grid) == 1


def test_count_roots_without_data():
    # positive Laplacian at the origin never reaches a zero
    grid = -np.geomspace(1e-3, 1e-4, 8)
    params = SteklovParams(3.0, 1.0)
    scan = scan_residuals(3.0, 1.0, grid, refine_edge=False)
    if not np.all(np.isnan(scan.residuals)):
        pytest.skip("every grid beta reaches a zero for this integrator setting")
    with pytest.raises(NoDataError):
        count_roots(params, grid)


def test_beta_ladder_is_increasing_and_negative():
    ladder = beta_ladder()
    assert np.all(np.diff(ladder) > 0.0)
    assert np.all(ladder < 0.0)


# -----------------------------------------------------------------------------
# Solutions
# -----------------------------------------------------------------------------

def test_navier_solution(cubic_solution):
    result = cubic_solution
    assert result.residual <= 1e-10
    assert result.root_count == 1
    assert result.beta_star < 0.0
    profile = result.profile
    assert profile.u[-1] == pytest.approx(0.0, abs=1e-8)
    assert np.all(profile.u[:-1] > 0.0)
    assert profile.lap[-1] == pytest.approx(0.0, abs=1e-6 * np.max(np.abs(profile.lap)))


def test_navier_solution_is_monotone(cubic_solution):
    assert check_monotonicity(cubic_solution.profile).holds


def test_summary_columns(cubic_solution):
    summary = cubic_solution.summary()
    assert list(summary) == ["p", "sigma", "R", "beta_star", "r0", "lambda", "u0", "residual", "root_count"]
    assert summary["u0"] == pytest.approx(cubic_solution.lam ** 2)


def test_scale_law_on_larger_disc(cubic_solution):
    larger = rescale(cubic_solution, 2.0)
    assert larger.u0 / cubic_solution.u0 == pytest.approx(0.25, rel=1e-8)
    assert larger.profile.R == 2.0
    assert larger.profile.u[-1] == pytest.approx(0.0, abs=1e-8)


def test_rescale_matches_direct_solve(cubic_solution):
    direct = solve_radial(SteklovParams(3.0, 1.0, 2.0))
    moved = rescale(cubic_solution, 2.0)
    assert np.max(np.abs(direct.profile.u - moved.profile.u)) <= 1e-8 * direct.u0


def test_rescale_to_same_radius_is_identity(cubic_solution):
    same = rescale(cubic_solution, 1.0)
    assert np.array_equal(same.profile.u, cubic_solution.profile.u)


def test_solution_is_marked_converged(cubic_solution):
    assert cubic_solution.converged
    assert cubic_solution.residual <= ShootingOptions().residual_tol


def test_residual_above_tolerance_is_marked_unconverged():
    tol = 1e-300
    result = solve_radial(SteklovParams(3.0, 1.0), ShootingOptions(residual_tol=tol))
    assert result.converged == (result.residual <= tol)
    assert rescale(result, 2.0).converged == result.converged


def test_deficiency_nonnegative():
    result = solve_radial(SteklovParams(3.0, 0.5))
    deficiency = deficiency_profile(result)
    assert deficiency.min_f >= -1e-8
    assert abs(deficiency.f_at_one) <= 1e-8
    assert deficiency.limit_at_zero > 0.0


def test_sublinear_solution():
    result = solve_radial(SteklovParams(0.5, 1.0))
    assert result.residual <= 1e-10
    assert np.all(result.profile.u[:-1] > 0.0)


@pytest.mark.slow
def test_boundary_slope_shrinks_with_sigma():
    rows = boundary_limits(3.0, [1.0, 10.0, 100.0, 1000.0])
    assert rows[0]["lap_R"] == pytest.approx(0.0, abs=1e-6)
    slopes = [abs(row["du_R"]) for row in rows]
    assert slopes == sorted(slopes, reverse=True)


@pytest.mark.slow
@pytest.mark.parametrize("p", [0.5, 2.0, 3.0, 5.0])
@pytest.mark.parametrize("sigma", [-0.9, -0.5, 0.0, 1.0, 2.0, 10.0])
def test_unique_positive_radial_solution(p, sigma):
    result = solve_radial(SteklovParams(p, sigma))
    assert result.root_count == 1
    assert result.residual <= 1e-10
    assert np.all(result.profile.u[:-1] > 0.0)
    assert check_monotonicity(result.profile).within_tolerance
