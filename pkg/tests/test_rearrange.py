"""Tests for Schwarz rearrangement of measured samples."""

import math

import numpy as np
import pytest

from exceptions import InvalidInputError
from models.options import RearrangeOptions
from spectral.field import SpectralField
from symmetry.rearrange import (
    MeasuredSamples, RadialDecreasingProfile, schwarz_rearrange, equimeasurability_gap,
    polar_cell_areas, sample_polar, quadrature_samples,
)

THIRD = math.pi / 3.0


def test_samples_must_cover_disc():
    with pytest.raises(InvalidInputError):
        MeasuredSamples([1.0, 2.0], [1.0, 1.0])


def test_samples_need_matching_lengths():
    with pytest.raises(InvalidInputError):
        MeasuredSamples([1.0, 2.0, 3.0], [math.pi / 2.0, math.pi / 2.0])


def test_samples_need_positive_measures():
    with pytest.raises(InvalidInputError):
        MeasuredSamples([1.0, 2.0], [math.pi + 1.0, -1.0])


def test_rearrangement_sorts_values():
    samples = MeasuredSamples([1.0, 3.0, 2.0], [THIRD] * 3)
    profile = schwarz_rearrange(samples)
    assert profile.values.tolist() == [3.0, 2.0, 1.0]
    assert np.allclose(profile.breakpoints, [THIRD, 2.0 * THIRD, math.pi])
    assert profile.breakpoints[-1] == math.pi


def test_rearrangement_keeps_measures_with_values():
    samples = MeasuredSamples([1.0, 5.0], [0.5 * math.pi + 1.0, 0.5 * math.pi - 1.0])
    profile = schwarz_rearrange(samples)
    assert np.allclose(profile.measures, [0.5 * math.pi - 1.0, 0.5 * math.pi + 1.0])


def test_ties_keep_input_order():
    samples = MeasuredSamples([2.0, 2.0, 1.0], [0.5, 1.0, math.pi - 1.5])
    profile = schwarz_rearrange(samples)
    assert np.allclose(profile.measures[:2], [0.5, 1.0])


def test_rearrangement_is_monotone(rng):
    n = 128
    measures = np.full(n, math.pi / n)
    u = rng.standard_normal(n)
    w = u + rng.random(n)
    lower = schwarz_rearrange(MeasuredSamples(u, measures))
    upper = schwarz_rearrange(MeasuredSamples(w, measures))
    assert np.all(lower.values <= upper.values)
    midpoints = (np.arange(n) + 0.5) * math.pi / n
    assert np.all(lower.at_measure(midpoints) <= upper.at_measure(midpoints))


def test_rearrangement_rejects_raw_arrays():
    with pytest.raises(InvalidInputError):
        schwarz_rearrange(np.array([1.0, 2.0]))


def test_profile_rejects_increasing_values():
    with pytest.raises(InvalidInputError):
        RadialDecreasingProfile(np.array([1.0, math.pi]), np.array([1.0, 2.0]))


def test_profile_lookup_by_radius():
    profile = schwarz_rearrange(MeasuredSamples([1.0, 3.0, 2.0], [THIRD] * 3))
    inner = math.sqrt(0.5 / 3.0)
    assert profile.at_radius(inner) == 3.0
    assert profile.at_radius(0.99) == 1.0
    assert profile(0.0, 0.0) == 3.0


def test_equimeasurable_and_norms_preserved(rng):
    measures = np.full(40, math.pi / 40.0)
    samples = MeasuredSamples(rng.standard_normal(40), measures)
    profile = schwarz_rearrange(samples)
    assert equimeasurability_gap(samples, profile) <= 1e-12
    for q in (2.0, 3.0, 4.0, 6.0):
        assert profile.norm(q) == pytest.approx(samples.norm(q), rel=1e-12)


def test_distribution_functions_agree(rng):
    measures = np.full(16, math.pi / 16.0)
    samples = MeasuredSamples(rng.uniform(0.0, 1.0, 16), measures)
    profile = schwarz_rearrange(samples)
    levels = np.linspace(0.0, 1.0, 11)
    assert np.allclose(samples.distribution(levels), profile.distribution(levels), atol=1e-12)


# -----------------------------------------------------------------------------
# Sampling
# -----------------------------------------------------------------------------

def test_polar_cells_cover_disc():
    areas = polar_cell_areas(2.0, 8, 12)
    assert areas.shape == (8, 12)
    assert float(np.sum(areas)) == pytest.approx(4.0 * math.pi, rel=1e-14)


def test_radial_decreasing_function_is_its_own_rearrangement():
    options = RearrangeOptions(16, 32)
    samples = sample_polar(lambda r, t: 1.0 - r ** 2, options=options)
    profile = schwarz_rearrange(samples)
    centers = (np.arange(16) + 0.5) / 16.0
    inside = (np.arange(16) + 0.25) / 16.0
    assert np.allclose(profile.at_radius(inside), 1.0 - centers ** 2, atol=1e-12)


def test_representatives_bracket_center_values():
    options = RearrangeOptions(8, 16)
    source = lambda r, t: np.cos(3.0 * t) * r + r ** 2
    lower = sample_polar(source, options=options, representative="lower")
    center = sample_polar(source, options=options, representative="center")
    upper = sample_polar(source, options=options, representative="upper")
    assert np.all(lower.values <= center.values)
    assert np.all(center.values <= upper.values)


def test_unknown_representative():
    with pytest.raises(InvalidInputError):
        sample_polar(lambda r, t: r, representative="median")


def test_field_samples_use_basis_radius(small_basis):
    field = SpectralField.from_function(small_basis, lambda r, t: 1.0 - r ** 2)
    samples = sample_polar(field, R=5.0, options=RearrangeOptions(8, 16))
    assert samples.R == 1.0
    assert samples.total_measure == pytest.approx(math.pi)


def test_quadrature_samples(small_basis):
    values = np.ones((small_basis.n_radial, small_basis.n_angular))
    samples = quadrature_samples(small_basis, values)
    assert samples.norm(2.0) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    with pytest.raises(InvalidInputError):
        quadrature_samples(small_basis, values[:-1])
