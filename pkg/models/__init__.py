"""
Package initialization file for the plate lab value types.

This file makes key classes from the models package available at the package level.
"""

import sys
import os
# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.params import SteklovParams, DISC, LIMACON
from models.radial import RadialGrid, RadialProfile, MonotonicityReport
from models.shooting import ShootingState, ShootingResult, ResidualScan, DeficiencyProfile
from models.options import (
    IntegratorOptions, ShootingOptions, SpectralOptions, DescentOptions, RearrangeOptions,
)
from models.report import RunRecord, RunReport, COLUMNS

__all__ = [
    'SteklovParams', 'DISC', 'LIMACON',
    'RadialGrid', 'RadialProfile', 'MonotonicityReport',
    'ShootingState', 'ShootingResult', 'ResidualScan', 'DeficiencyProfile',
    'IntegratorOptions', 'ShootingOptions', 'SpectralOptions', 'DescentOptions',
    'RearrangeOptions',
    'RunRecord', 'RunReport', 'COLUMNS',
]
