"""
Schwarz symmetrization of sampled functions on the disc.

Samples are (value, measure) cells covering B_R. The rearrangement sorts
the values in decreasing order and stacks their measures from the origin
outward, which yields a radial non-increasing step profile in the area
variable a = pi |x|^2.
"""

import sys
import os
import math
import logging
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import THRESHOLD_LADDER
from exceptions import InvalidInputError
from models.options import RearrangeOptions
from spectral.field import SpectralField, evaluate_grid

logger = logging.getLogger(__name__)

MEASURE_TOL = 1e-8
REPRESENTATIVES = ("center", "lower", "upper")


@dataclass(frozen=True, eq=False)
class MeasuredSamples:
    """
    Values with the measures of the cells they stand for.

    Attributes:
        values (np.ndarray): Cell values.
        measures (np.ndarray): Cell areas, all positive.
        R (float): Radius of the covered disc.
    """

    values: np.ndarray
    measures: np.ndarray
    R: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        measures = np.asarray(self.measures, dtype=float).ravel()
        if values.shape != measures.shape:
            raise InvalidInputError(f"{values.size} values for {measures.size} measures")
        if values.size == 0:
            raise InvalidInputError("no samples")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("sample values must be finite")
        if not np.all(measures > 0.0):
            raise InvalidInputError("cell measures must be positive")
        area = math.pi * self.R ** 2
        total = float(np.sum(measures))
        if abs(total - area) > MEASURE_TOL * area:
            raise InvalidInputError(f"cells cover {total:.12g}, disc area is {area:.12g}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "measures", measures)

    @property
    def total_measure(self):
        return float(np.sum(self.measures))

    @property
    def cells(self):
        return list(zip(self.values.tolist(), self.measures.tolist()))

    def __len__(self):
        return self.values.size

    def norm(self, q):
        """L^q norm of the step function."""
        return float(np.sum(self.measures * np.abs(self.values) ** q)) ** (1.0 / q)

    def distribution(self, t):
        """|{u > t}| for every threshold in t."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.array([float(np.sum(self.measures[self.values > level])) for level in t])


@dataclass(frozen=True, eq=False)
class RadialDecreasingProfile:
    """
    Decreasing rearrangement as a step function of the area variable.

    Band i holds values[i] on [breakpoints[i-1], breakpoints[i]) with
    breakpoints[-1] = pi R^2.

    Attributes:
        breakpoints (np.ndarray): Cumulative areas, increasing.
        values (np.ndarray): Non-increasing band values.
        R (float): Disc radius.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    R: float = 1.0

    def __post_init__(self):
        if np.any(np.diff(self.values) > 0.0):
            raise InvalidInputError("profile values must be non-increasing")
        if np.any(np.diff(self.breakpoints) <= 0.0):
            raise InvalidInputError("breakpoints must increase")

    @property
    def measures(self):
        return np.diff(np.concatenate(([0.0], self.breakpoints)))

    def at_measure(self, a, side="right"):
        """
        Profile value at cumulative area a.

        Args:
            a (array): Areas in [0, pi R^2].
            side (str): "right" for the right-continuous step, "left" for the
                left limit, which picks the band ending at or after a.
        """
        a = np.asarray(a, dtype=float)
        index = np.searchsorted(self.breakpoints, a, side=side)
        return self.values[np.clip(index, 0, self.values.size - 1)]

    def at_radius(self, t, side="right"):
        t = np.asarray(t, dtype=float)
        return self.at_measure(math.pi * t ** 2, side)

    def __call__(self, x, y):
        return self.at_radius(np.hypot(x, y))

    def norm(self, q):
        return float(np.sum(self.measures * np.abs(self.values) ** q)) ** (1.0 / q)

    def distribution(self, t):
        """|{u* > t}| for every threshold in t."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        measures = self.measures
        return np.array([float(np.sum(measures[self.values > level])) for level in t])


def schwarz_rearrange(samples):
    """
    Decreasing rearrangement of measured samples.

    Ties keep their input order, so the result is deterministic.

    Args:
        samples (MeasuredSamples): Cells covering the disc.

    Returns:
        RadialDecreasingProfile: The rearranged profile.
    """
    if not isinstance(samples, MeasuredSamples):
        raise InvalidInputError(f"expected MeasuredSamples, got {type(samples).__name__}")
    order = np.argsort(-samples.values, kind="stable")
    values = samples.values[order]
    breakpoints = np.cumsum(samples.measures[order])
    # the last breakpoint is the disc area up to summation order
    breakpoints[-1] = math.pi * samples.R ** 2
    return RadialDecreasingProfile(breakpoints, values, samples.R)


def equimeasurability_gap(samples, profile, levels=THRESHOLD_LADDER):
    """
    Largest |mu_u(t) - mu_{u*}(t)| over an evenly spaced threshold ladder.

    Returns:
        float: Gap in area units.
    """
    lo, hi = float(np.min(samples.values)), float(np.max(samples.values))
    ladder = np.linspace(lo, hi, levels)
    return float(np.max(np.abs(samples.distribution(ladder) - profile.distribution(ladder))))


# -----------------------------------------------------------------------------
# Sampling
# -----------------------------------------------------------------------------

def polar_cell_areas(R, rings, sectors):
    """Exact areas of the annular sectors, shape (rings, sectors)."""
    edges = np.linspace(0.0, R, rings + 1)
    ring_area = math.pi * np.diff(edges ** 2)
    return np.repeat((ring_area / sectors)[:, None], sectors, axis=1)


def sample_polar(source, R=1.0, options=None, representative="center"):
    """
    MeasuredSamples of a function on exact annular polar cells.

    Each cell is represented by its center value, or by the min ("lower")
    or max ("upper") over its 3 x 3 corner, edge-midpoint and center points.

    Args:
        source: SpectralField or vectorized callable f(r, theta).
        R (float): Disc radius; a field's basis radius wins.
        options (RearrangeOptions, optional): Cell counts.
        representative (str): "center", "lower" or "upper".

    Returns:
        MeasuredSamples: One sample per cell.
    """
    options = (options or RearrangeOptions()).validate()
    if representative not in REPRESENTATIVES:
        raise InvalidInputError(f"representative must be one of {REPRESENTATIVES}")
    rings, sectors = options.rings, options.sectors
    if isinstance(source, SpectralField):
        R = source.basis.R
    r_fine = np.linspace(0.0, R, 2 * rings + 1)
    t_fine = np.linspace(0.0, 2.0 * math.pi, 2 * sectors + 1)

    if isinstance(source, SpectralField):
        fine = evaluate_grid(source, r_fine, t_fine)
    else:
        rr, tt = np.meshgrid(r_fine, t_fine, indexing="ij")
        fine = np.broadcast_to(np.asarray(source(rr, tt), dtype=float), rr.shape)

    if representative == "center":
        values = fine[1::2, 1::2]
    else:
        windows = sliding_window_view(fine, (3, 3))[::2, ::2]
        reduce = np.min if representative == "lower" else np.max
        values = reduce(windows, axis=(2, 3))
    return MeasuredSamples(values, polar_cell_areas(R, rings, sectors), R)


def quadrature_samples(basis, values):
    """
    MeasuredSamples on the Gauss-Legendre x uniform quadrature grid of a basis.

    Args:
        basis (SpectralBasis): Basis whose grid the values live on.
        values (np.ndarray): Shape (n_radial, n_angular).
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (basis.n_radial, basis.n_angular):
        raise InvalidInputError("values must live on the basis quadrature grid")
    return MeasuredSamples(values, basis.quadrature_weights(), basis.R)
