"""
Run records and reports.

A RunReport holds one record per grid point (or per acceptance check), in
grid order, each stamped with the hash of the config that produced it.
"""

import sys
import os
import math
from dataclasses import dataclass, field

import numpy as np

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import REPORT_SCHEMA_VERSION

SHOOT_COLUMNS = ("p", "sigma", "R", "beta_star", "r0", "lambda", "u0", "residual", "root_count")

# report columns per experiment kind, in file order
COLUMNS = {
    "shoot": SHOOT_COLUMNS,
    "sweep-sigma": SHOOT_COLUMNS + ("du_R", "lap_R", "min_deficiency", "deficiency_at_one"),
    "ground-state": (
        "p", "sigma", "R", "energy", "nehari_t", "min_value", "max_abs", "radial_fraction",
        "nehari_residual", "iterations", "converged",
    ),
    "steklov-eig": ("R", "a", "m", "delta", "delta_minus", "nu_star"),
    "talenti": ("source", "label", "max_excess", "max_gap", "norm_gap"),
    "limacon": (
        "a", "p", "sigma", "convex", "min_kappa", "negative_length", "nu_star", "delta_minus",
        "energy", "min_value", "max_abs", "radial_fraction",
    ),
    "verify-all": ("criterion", "check", "value", "bound", "passed"),
}


def plain(value):
    """JSON-ready scalar: numpy types unwrapped, NaN mapped to None."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    return value


@dataclass
class RunRecord:
    """
    One grid point.

    Attributes:
        kind (str): Experiment kind.
        index (int): Position in grid order.
        values (dict): Inputs and outputs by column name.
        checks (dict): Pass/fail per invariant.
        error (str): Captured module error, or None.
        config_hash (str): sha256 of the producing config.
    """

    kind: str
    index: int
    values: dict
    checks: dict = field(default_factory=dict)
    error: str = None
    config_hash: str = ""

    def __post_init__(self):
        self.values = {key: plain(value) for key, value in self.values.items()}
        self.checks = {key: bool(value) for key, value in self.checks.items()}

    @property
    def passed(self):
        return self.error is None and all(self.checks.values())

    def row(self, columns):
        return [self.values.get(column) for column in columns]

    def as_dict(self):
        return {
            "index": self.index,
            "kind": self.kind,
            "values": self.values,
            "checks": self.checks,
            "error": self.error,
            "passed": self.passed,
            "config_hash": self.config_hash,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["kind"], data["index"], data["values"], data["checks"],
                   data["error"], data["config_hash"])


@dataclass
class RunReport:
    """
    Records of one experiment.

    Attributes:
        kind (str): Experiment kind.
        config_hash (str): sha256 of the config.
        records (list): RunRecords in grid order.
        schema_version (int): Report schema version.
        artifacts (dict): Plot-ready data files, name -> columns.
        timings (dict): Wall-clock seconds per stage; never written to disk.
        curve_family (tuple): Limacon shape parameters whose boundary curves
            are written beside the report.
    """

    kind: str
    config_hash: str
    records: list = field(default_factory=list)
    schema_version: int = REPORT_SCHEMA_VERSION
    artifacts: dict = field(default_factory=dict, compare=False, repr=False)
    timings: dict = field(default_factory=dict, compare=False, repr=False)
    curve_family: tuple = field(default=(), compare=False, repr=False)

    @property
    def columns(self):
        return COLUMNS[self.kind]

    @property
    def passed(self):
        return all(record.passed for record in self.records)

    def failures(self):
        return [record for record in self.records if not record.passed]

    def as_dict(self):
        return {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "config_hash": self.config_hash,
            "columns": list(self.columns),
            "records": [record.as_dict() for record in self.records],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            kind=data["kind"],
            config_hash=data["config_hash"],
            records=[RunRecord.from_dict(item) for item in data["records"]],
            schema_version=data["schema_version"],
        )
