"""Tests for the Fourier-Bessel basis and spectral fields."""

import math

import numpy as np
import pytest

from exceptions import InvalidInputError, RangeError
from spectral.basis import SpectralBasis, bessel_zero, COS, SIN
from spectral.field import (
    SpectralField, evaluate, evaluate_grid, normal_derivative_trace, radial_fraction,
)


@pytest.fixture(scope="module")
def tiny_basis():
    return SpectralBasis(1.0, M=2, K=6, n_radial=64, n_angular=16)


def test_bessel_zeros():
    assert bessel_zero(0, 1) == pytest.approx(2.404825557695773, abs=1e-13)
    assert bessel_zero(1, 1) == pytest.approx(3.8317059702075125, abs=1e-13)
    assert bessel_zero(0, 2) == pytest.approx(5.520078110286311, abs=1e-13)


@pytest.mark.parametrize("m, k", [(61, 1), (0, 0), (0, 201), (-1, 1)])
def test_bessel_zero_outside_table(m, k):
    with pytest.raises(RangeError):
        bessel_zero(m, k)


def test_basis_rejects_coarse_angular_grid():
    with pytest.raises(InvalidInputError):
        SpectralBasis(1.0, M=8, K=4, n_radial=16, n_angular=16)


def test_basis_rejects_nonpositive_radius():
    with pytest.raises(InvalidInputError):
        SpectralBasis(0.0, M=2, K=4, n_radial=16, n_angular=8)


def test_live_coefficient_count(small_basis):
    M, K = small_basis.M, small_basis.K
    assert small_basis.size == 2 * (M + 1) * (K + 1) - (K + 1)
    assert not small_basis.active[SIN, 0].any()


def test_index_rejects_missing_members(small_basis):
    with pytest.raises(RangeError):
        small_basis.index(0, 1, SIN)
    with pytest.raises(RangeError):
        small_basis.index(small_basis.M + 1, 1)
    assert small_basis.index(2, small_basis.K + 1, SIN) == (SIN, 2, small_basis.K)


def test_members_vanish_on_boundary(tiny_basis):
    values = tiny_basis.radial_values(1.0)[:, :, 0]
    assert np.max(np.abs(values)) <= 1e-12


def test_boundary_traces_match_derivatives(tiny_basis):
    slopes = tiny_basis.radial_values(1.0, derivative=1)[:, :, 0]
    assert np.allclose(slopes, tiny_basis.boundary_traces, rtol=1e-10, atol=1e-12)


def test_radial_factors_are_l2_orthogonal(tiny_basis):
    w = tiny_basis.radial_weights
    for m in tiny_basis.modes:
        table = tiny_basis.radial_table[m]
        gram = (table * w) @ table.T
        expected = np.diag(tiny_basis.radial_mass[m])
        assert np.allclose(gram, expected, atol=1e-12)


def test_laplace_factors_are_orthogonal(tiny_basis):
    w = tiny_basis.radial_weights
    for m in tiny_basis.modes:
        table = tiny_basis.laplace_table[m]
        gram = (table * w) @ table.T
        diagonal = np.diag(gram)
        off = gram - np.diag(diagonal)
        assert np.max(np.abs(off)) <= 1e-10 * np.max(diagonal)
        assert np.allclose(diagonal * tiny_basis.angular_weight[m], tiny_basis.bilaplace[m], rtol=1e-10)


@pytest.mark.parametrize("r", [0.3, 0.7])
def test_laplace_values_match_polar_laplacian(tiny_basis, r):
    m = tiny_basis.modes[:, None]
    value = tiny_basis.radial_values(r)[:, :, 0]
    d1 = tiny_basis.radial_values(r, 1)[:, :, 0]
    d2 = tiny_basis.radial_values(r, 2)[:, :, 0]
    expected = d2 + d1 / r - m ** 2 * value / r ** 2
    assert np.allclose(tiny_basis.laplace_values(r)[:, :, 0], expected, rtol=1e-10, atol=1e-10)


# -----------------------------------------------------------------------------
# Fields
# -----------------------------------------------------------------------------

def test_field_rejects_sin_at_mode_zero(small_basis):
    coeffs = small_basis.zeros_like()
    coeffs[SIN, 0, 0] = 1.0
    with pytest.raises(InvalidInputError):
        SpectralField(small_basis, coeffs)


def test_field_rejects_wrong_shape(small_basis):
    with pytest.raises(InvalidInputError):
        SpectralField(small_basis, np.zeros((2, 3, 3)))


def test_field_coefficients_are_read_only(small_basis):
    field = SpectralField.single(small_basis, 1, 1)
    with pytest.raises(ValueError):
        field.coeffs[COS, 1, 0] = 2.0


def test_projection_reproduces_polynomial_in_span(small_basis):
    # 1 - r^2 is -psi_0 plus Bessel members, so it lies in the span
    field = SpectralField.from_function(small_basis, lambda r, t: 1.0 - r ** 2)
    r = np.array([0.0, 0.25, 0.5, 0.9])
    assert np.allclose(evaluate(field, r, 0.3), 1.0 - r ** 2, atol=1e-10)
    assert radial_fraction(field) == pytest.approx(1.0)


def test_laplacian_of_polynomial_field(small_basis):
    field = SpectralField.from_function(small_basis, lambda r, t: (r - r ** 3) * np.cos(t))
    r = np.array([0.2, 0.6])
    lap = evaluate_grid(field, r, [0.0], laplacian=True)[:, 0]
    # lap((r - r^3) cos t) = -8 r cos t
    assert np.allclose(lap, -8.0 * r, atol=1e-9)


def test_normal_derivative_of_polynomial_field(small_basis):
    field = SpectralField.from_function(small_basis, lambda r, t: 1.0 - r ** 2)
    theta = np.linspace(0.0, 2.0 * math.pi, 7)
    assert np.allclose(normal_derivative_trace(field, theta), -2.0, atol=1e-10)


def test_evaluate_outside_disc(small_basis):
    field = SpectralField.single(small_basis, 0, 1)
    with pytest.raises(RangeError):
        evaluate(field, 1.5, 0.0)


def test_radial_fraction_of_mixed_field(small_basis):
    coeffs = small_basis.zeros_like()
    coeffs[COS, 0, 0] = 1.0 / small_basis.norms[0, 0]
    coeffs[SIN, 2, 1] = 1.0 / small_basis.norms[2, 1]
    assert radial_fraction(SpectralField(small_basis, coeffs)) == pytest.approx(0.5)


def test_radial_fraction_of_zero_field(small_basis):
    with pytest.raises(InvalidInputError):
        radial_fraction(SpectralField.zero(small_basis))
