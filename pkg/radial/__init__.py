"""
Package initialization file for the radial solvers.

This file makes the radial calculus and shooting functions available at the package level.
"""

import sys
import os
# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from radial.radial_core import (
    laplacian_to_gradient, green_log_reconstruct, radial_laplacian,
    check_monotonicity, profile_consistency, check_profile_consistency,
)
from radial.shooting import (
    RadialTrajectory, series_state, integrate_ivp, steklov_residual, scan_residuals,
    beta_ladder, solve_radial, count_roots, rescale, deficiency_profile, boundary_limits,
)

__all__ = [
    'laplacian_to_gradient', 'green_log_reconstruct', 'radial_laplacian',
    'check_monotonicity', 'profile_consistency', 'check_profile_consistency',
    'RadialTrajectory', 'series_state', 'integrate_ivp', 'steklov_residual',
    'scan_residuals', 'beta_ladder', 'solve_radial', 'count_roots', 'rescale',
    'deficiency_profile', 'boundary_limits',
]
