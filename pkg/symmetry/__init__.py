"""
Package initialization file for the rearrangement tools.

This file makes the symmetrization and comparison functions available at the package level.
"""

import sys
import os
# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from symmetry.rearrange import (
    MeasuredSamples, RadialDecreasingProfile, schwarz_rearrange, equimeasurability_gap,
    polar_cell_areas, sample_polar, quadrature_samples,
)
from symmetry.talenti import (
    TalentiReport, ChainRelation, ChainReport, radial_potential, talenti_compare,
    boundary_chain_check,
)

__all__ = [
    'MeasuredSamples', 'RadialDecreasingProfile', 'schwarz_rearrange', 'equimeasurability_gap',
    'polar_cell_areas', 'sample_polar', 'quadrature_samples',
    'TalentiReport', 'ChainRelation', 'ChainReport', 'radial_potential', 'talenti_compare',
    'boundary_chain_check',
]
