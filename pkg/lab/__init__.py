"""
Package initialization file for the experiment driver.

This file makes the config, runner and report functions available at the package level.
"""

import sys
import os
# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lab.config import ExperimentConfig, parse_config
from lab.runner import run_experiment, run_point, grid_points, verify_points, SmoothSource
from lab.report import write_report, render_csv, render_json, parse_json, read_report
from lab.export import (
    profile_columns, ray_columns, curve_columns, write_columns, write_curve_family,
)

__all__ = [
    'ExperimentConfig', 'parse_config',
    'run_experiment', 'run_point', 'grid_points', 'verify_points', 'SmoothSource',
    'write_report', 'render_csv', 'render_json', 'parse_json', 'read_report',
    'profile_columns', 'ray_columns', 'curve_columns', 'write_columns', 'write_curve_family',
]
