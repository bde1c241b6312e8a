"""Tests for the spectral ground-state descent on the disc."""

import importlib

import numpy as np
import pytest

from constants import DESCENT_ROUNDOFF_FACTOR, TREND_SIGMA
from exceptions import InvalidInputError, PositivityWindowError
from models.options import DescentOptions
from models.params import SteklovParams
from radial.shooting import solve_radial
from spectral.basis import SpectralBasis
from spectral.field import evaluate
from spectral.forms import assemble_boundary_form
from spectral.ground_state import DiscEnergy, NehariDescent, ground_state


@pytest.fixture(scope="module")
def cubic_ground_state(small_basis):
    return ground_state(SteklovParams(3.0, 1.0), small_basis)


def test_ground_state_converges(cubic_ground_state):
    report = cubic_ground_state
    assert report.converged
    assert report.energy > 0.0
    assert report.nehari_t > 0.0
    assert report.objective_trace[-1] <= report.objective_trace[0]


def test_ground_state_is_positive_and_radial(cubic_ground_state):
    report = cubic_ground_state
    assert report.min_value > 0.0
    assert report.radial_fraction >= 1.0 - 1e-6
    assert float(evaluate(report.field, 0.0, 0.0)) > 0.0


def test_ground_state_lies_on_nehari_manifold(cubic_ground_state):
    report = cubic_ground_state
    assert abs(report.nehari_residual) <= 1e-8 * report.quadratic
    assert abs(report.nehari_gap) <= 1e-8 * report.quadratic


def test_summary_keys(cubic_ground_state):
    assert list(cubic_ground_state.summary()) == [
        "energy", "nehari_t", "min_value", "max_abs", "radial_fraction",
        "iterations", "converged", "nehari_residual",
    ]


def test_ground_state_matches_shooting(cubic_ground_state, cubic_solution):
    profile = cubic_solution.profile
    spectral = evaluate(cubic_ground_state.field, profile.r, 0.0)
    assert np.max(np.abs(spectral - profile.u)) <= 1e-3 * cubic_solution.u0


def test_sublinear_ground_state(small_basis):
    report = ground_state(SteklovParams(0.5, 1.0), small_basis)
    assert report.energy < 0.0
    assert report.nehari_t is None
    assert report.nehari_gap is None
    assert report.min_value > 0.0


def test_asymmetric_seed_relaxes_to_radial(small_basis):
    options = DescentOptions(asymmetric=True, seed=7)
    report = ground_state(SteklovParams(3.0, 2.0), small_basis, options)
    assert report.converged
    assert report.radial_fraction >= 1.0 - 1e-6


def test_descent_is_deterministic(small_basis):
    params = SteklovParams(3.0, 0.0)
    first = ground_state(params, small_basis, DescentOptions(seed=11))
    second = ground_state(params, small_basis, DescentOptions(seed=11))
    assert np.array_equal(first.field.coeffs, second.field.coeffs)


def test_asymmetric_seed_carries_nonradial_energy(small_basis):
    problem = DiscEnergy(small_basis, 1.0)
    descent = NehariDescent(problem, 3.0, DescentOptions(asymmetric=True))
    y = descent.initial_vector() * descent.scale
    share = np.sum(y[problem.nonradial_mask()] ** 2) / np.sum(y ** 2)
    assert share == pytest.approx(0.5, abs=0.05)


def test_energy_outside_window(small_basis):
    with pytest.raises(InvalidInputError):
        DiscEnergy(small_basis, -1.0)


def test_indefinite_form_is_rejected(small_basis, monkeypatch):
    module = importlib.import_module("spectral.ground_state")
    monkeypatch.setattr(module, "assemble_hsigma_form",
                        lambda basis, sigma: assemble_boundary_form(basis, 2.5))
    with pytest.raises(PositivityWindowError):
        DiscEnergy(small_basis, 0.0)


def test_descent_options_validate():
    with pytest.raises(InvalidInputError):
        DescentOptions(max_iter=0).validate()


@pytest.mark.slow
@pytest.mark.parametrize("p, sigma", [(3.0, 1.0), (3.0, 2.0), (2.0, 5.0)])
def test_cross_solver_agreement(p, sigma):
    basis = SpectralBasis(1.0)
    report = ground_state(SteklovParams(p, sigma), basis)
    shooting = solve_radial(SteklovParams(p, sigma))
    spectral = evaluate(report.field, shooting.profile.r, 0.0)
    assert np.max(np.abs(spectral - shooting.profile.u)) <= 1e-4


def test_default_descent_converges_after_roundoff_stall(small_basis):
    result = NehariDescent(DiscEnergy(small_basis, 1.0), 3.0).run()
    assert result.converged
    assert result.gradient_norm <= DESCENT_ROUNDOFF_FACTOR * DescentOptions().gtol


def test_ground_state_rejects_radius_mismatch(small_basis):
    with pytest.raises(InvalidInputError):
        ground_state(SteklovParams(3.0, 1.0, 2.0), small_basis)


def test_energy_does_not_increase_with_more_radial_modes():
    params = SteklovParams(3.0, 1.0)
    energies = [
        ground_state(params, SpectralBasis(1.0, M=4, K=K, n_radial=64, n_angular=32)).energy
        for K in (8, 12, 20)
    ]
    for coarse, fine in zip(energies, energies[1:]):
        assert fine <= coarse + 1e-9 * abs(coarse)


def test_sigma_trend_of_ground_states(small_basis):
    sublinear = [ground_state(SteklovParams(0.5, s), small_basis) for s in TREND_SIGMA]
    superlinear = [ground_state(SteklovParams(3.0, s), small_basis) for s in TREND_SIGMA]
    assert np.all(np.diff([report.max_abs for report in sublinear]) < 0.0)
    assert np.all(np.diff([report.quadratic for report in superlinear]) > 0.0)
