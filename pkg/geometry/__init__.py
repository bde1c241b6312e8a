"""
Package initialization file for the limacon geometry.

This file makes the domain, curvature and pullback functions available at the package level.
"""

import sys
import os
# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from geometry.limacon import (
    LimaconDomain, ConvexityReport, CurvatureSplit, BoundaryCurve,
    boundary_point, curvature, arclength_density, is_convex, curvature_split,
    dist_to_boundary, green_bound, boundary_curve,
)
from geometry.pullback import (
    PullbackForms, PullbackEnergy, ThresholdReport,
    pullback_forms, pullback_energy, steklov_threshold, limacon_ground_state,
)

__all__ = [
    'LimaconDomain', 'ConvexityReport', 'CurvatureSplit', 'BoundaryCurve',
    'boundary_point', 'curvature', 'arclength_density', 'is_convex', 'curvature_split',
    'dist_to_boundary', 'green_bound', 'boundary_curve',
    'PullbackForms', 'PullbackEnergy', 'ThresholdReport',
    'pullback_forms', 'pullback_energy', 'steklov_threshold', 'limacon_ground_state',
]
