"""
Plot-ready data files.

Artifacts are kept as ordered column mappings until they are written, so a
report can be assembled in memory and written once.
"""

import sys
import os
import csv
import logging

import numpy as np

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import CURVE_FAMILY, CURVE_SAMPLES
from exceptions import InvalidInputError
from geometry.limacon import boundary_curve
from spectral.field import evaluate_grid

logger = logging.getLogger(__name__)

RAY_NODES = 257


def profile_columns(profile):
    """r, u, du, lap columns of a radial profile."""
    return {
        "r": profile.r.tolist(),
        "u": profile.u.tolist(),
        "du": profile.du.tolist(),
        "lap": profile.lap.tolist(),
    }


def ray_columns(field, theta=0.0, nodes=RAY_NODES):
    """u and lap u of a spectral field along the ray at angle theta."""
    r = np.linspace(0.0, field.basis.R, nodes)
    return {
        "r": r.tolist(),
        "u": evaluate_grid(field, r, [theta])[:, 0].tolist(),
        "lap": evaluate_grid(field, r, [theta], laplacian=True)[:, 0].tolist(),
    }


def curve_columns(curve):
    return {
        "phi": curve.phi.tolist(),
        "x": curve.x.tolist(),
        "y": curve.y.tolist(),
        "kappa": curve.kappa.tolist(),
    }


def curve_name(a):
    return f"boundary_a{a:.6f}.csv"


def curve_family_artifacts(family=CURVE_FAMILY, n=CURVE_SAMPLES):
    """Boundary curves of the limacon family, keyed by file name."""
    return {curve_name(a): curve_columns(boundary_curve(a, n)) for a in family}


def write_columns(path, columns):
    """
    Write equal-length columns as CSV.

    Floats are written in their shortest round-trip form.

    Args:
        path (str): Target file.
        columns (dict): Header -> list of values.
    """
    lengths = {len(values) for values in columns.values()}
    if len(lengths) > 1:
        raise InvalidInputError(f"columns of unequal length for {path}")
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(columns))
        writer.writerows(zip(*columns.values()))
    return path


def write_artifacts(out_dir, artifacts):
    """
    Write every artifact into out_dir in name order.

    Returns:
        list: Written paths.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name in sorted(artifacts):
        paths.append(write_columns(os.path.join(out_dir, name), artifacts[name]))
    logger.debug("wrote %d data files to %s", len(paths), out_dir)
    return paths


def write_curve_family(out_dir, family=CURVE_FAMILY, n=CURVE_SAMPLES):
    """
    Write (phi, x, y, kappa) for each limacon of the family.

    Args:
        out_dir (str): Output directory.
        family (iterable): Shape parameters in [0, 1/2].
        n (int): Samples per curve.

    Returns:
        list: Written paths.
    """
    return write_artifacts(out_dir, curve_family_artifacts(family, n))
