"""
Package initialization file for the disc spectral solvers.

This file makes the basis, field, form and ground-state functions available at the package level.
"""

import sys
import os
# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from spectral.basis import SpectralBasis, bessel_zero, COS, SIN
from spectral.field import (
    SpectralField, evaluate, evaluate_grid, normal_derivative_trace, radial_fraction,
    boundary_coefficients, grid_derivatives,
)
from spectral.forms import (
    QuadraticForm, SteklovSpectrum, NormBounds, HessianIdentity,
    assemble_hsigma_form, assemble_boundary_form, steklov_eigenvalue, norm_equivalence_bounds,
    linear_steklov_solve, poisson_solve, load_vector, energy, nehari_scale, nehari_residual,
    nonlinear_integral, hessian_identity_check,
)
from spectral.ground_state import (
    GroundStateReport, DiscEnergy, NehariDescent, build_report, ground_state,
)

__all__ = [
    'SpectralBasis', 'bessel_zero', 'COS', 'SIN',
    'SpectralField', 'evaluate', 'evaluate_grid', 'normal_derivative_trace', 'radial_fraction',
    'boundary_coefficients', 'grid_derivatives',
    'QuadraticForm', 'SteklovSpectrum', 'NormBounds', 'HessianIdentity',
    'assemble_hsigma_form', 'assemble_boundary_form', 'steklov_eigenvalue',
    'norm_equivalence_bounds', 'linear_steklov_solve', 'poisson_solve', 'load_vector',
    'energy', 'nehari_scale', 'nehari_residual', 'nonlinear_integral', 'hessian_identity_check',
    'GroundStateReport', 'DiscEnergy', 'NehariDescent', 'build_report', 'ground_state',
]
