"""
Limacon geometry.

The limacon Omega_a = {rho < 1 + 2a cos(phi)} is the image of the unit disc
under h(z) = a + z + a z^2, and h(e^{i phi}) = e^{i phi}(1 + 2a cos(phi)),
so the conformal and polar boundary parametrizations share the angle phi.
The domain is convex exactly for a <= 1/4.
"""

import sys
import os
import math
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import (
    LIMACON_A_MAX, CONVEX_A, CURVATURE_SCAN, CONVEX_TOL, DIST_XATOL, CURVE_SAMPLES,
)
from exceptions import InvalidInputError

logger = logging.getLogger(__name__)

CUSP_TOL = 1e-12


@dataclass(frozen=True)
class LimaconDomain:
    """
    The limacon Omega_a.

    Attributes:
        a (float): Shape parameter in [0, 1/2).
    """

    a: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.a < LIMACON_A_MAX:
            raise InvalidInputError(f"limacon parameter must lie in [0, 1/2), got {self.a}")

    @property
    def convex(self):
        return self.a <= CONVEX_A

    def rho(self, phi):
        """Boundary radius 1 + 2a cos(phi)."""
        return 1.0 + 2.0 * self.a * np.cos(phi)

    def conformal_map(self, z):
        return self.a + z + self.a * z ** 2

    def map_derivative(self, z):
        return 1.0 + 2.0 * self.a * z

    def contains(self, x, y):
        """Strict interior test through the polar inequality."""
        rho = np.hypot(x, y)
        phi = np.arctan2(y, x)
        return rho < self.rho(phi)


def _curvature(a, phi):
    c = np.cos(phi)
    return (1.0 + 6.0 * a * c + 8.0 * a ** 2) / (1.0 + 4.0 * a * c + 4.0 * a ** 2) ** 1.5


def boundary_point(domain, phi):
    """
    Boundary point at polar angle phi.

    Returns:
        tuple: (x, y) arrays.
    """
    rho = domain.rho(phi)
    return rho * np.cos(phi), rho * np.sin(phi)


def curvature(domain, phi):
    """
    Signed curvature of the boundary, positive on convex arcs.

    Args:
        domain (LimaconDomain): Domain.
        phi (array): Polar angles.

    Returns:
        np.ndarray: kappa(phi) = (1 + 6a cos + 8a^2) / (1 + 4a cos + 4a^2)^{3/2}.
    """
    return _curvature(domain.a, np.asarray(phi, dtype=float))


def arclength_density(domain, phi):
    """|h'(e^{i phi})| = ds / dphi."""
    a = domain.a
    return np.sqrt(1.0 + 4.0 * a * np.cos(phi) + 4.0 * a ** 2)


@dataclass(frozen=True)
class ConvexityReport:
    """
    Attributes:
        convex (bool): min kappa >= -1e-12.
        min_kappa (float): Minimum curvature.
        phi_min (float): Angle of the minimum.
    """

    convex: bool
    min_kappa: float
    phi_min: float


def _refine_extremum(fn, phi, step, sign):
    result = minimize_scalar(
        lambda t: sign * fn(t), bounds=(phi - step, phi + step), method="bounded",
        options={"xatol": DIST_XATOL},
    )
    return float(result.x), sign * float(result.fun)


def is_convex(domain):
    """
    Convexity from the minimum curvature over a dense angle grid.

    Returns:
        ConvexityReport: Flag with min kappa and its angle.
    """
    phi = np.linspace(0.0, 2.0 * math.pi, CURVATURE_SCAN, endpoint=False)
    kappa = curvature(domain, phi)
    i = int(np.argmin(kappa))
    step = 2.0 * math.pi / CURVATURE_SCAN
    phi_min, kappa_min = _refine_extremum(lambda t: _curvature(domain.a, t), phi[i], step, 1.0)
    if kappa[i] < kappa_min:
        phi_min, kappa_min = float(phi[i]), float(kappa[i])
    return ConvexityReport(kappa_min >= -CONVEX_TOL, kappa_min, phi_min % (2.0 * math.pi))


@dataclass(frozen=True)
class CurvatureSplit:
    """
    The arc where the boundary bends inward.

    Attributes:
        negative_length (float): Length of {kappa < 0}.
        total_length (float): Perimeter.
        min_kappa (float): kappa(pi) = (1 - 4a) / (1 - 2a)^2.
        max_kappa (float): kappa(0) = (1 + 4a) / (1 + 2a)^2.
        interval (tuple): (phi_lo, phi_hi) with kappa < 0 inside, or None.
    """

    negative_length: float
    total_length: float
    min_kappa: float
    max_kappa: float
    interval: tuple


def curvature_split(domain):
    """
    Split the boundary by the sign of its curvature.

    kappa < 0 exactly where cos(phi) < -(1 + 8a^2) / (6a).
    """
    a = domain.a

    def density(t):
        return float(arclength_density(domain, t))

    total, _ = quad(density, 0.0, 2.0 * math.pi, epsabs=1e-13, epsrel=1e-13)
    interval = None
    negative = 0.0
    if a > CONVEX_A:
        lo = math.acos(-(1.0 + 8.0 * a ** 2) / (6.0 * a))
        interval = (lo, 2.0 * math.pi - lo)
        negative, _ = quad(density, *interval, epsabs=1e-13, epsrel=1e-13)
    return CurvatureSplit(
        negative_length=negative,
        total_length=total,
        min_kappa=(1.0 - 4.0 * a) / (1.0 - 2.0 * a) ** 2,
        max_kappa=(1.0 + 4.0 * a) / (1.0 + 2.0 * a) ** 2,
        interval=interval,
    )


def _check_interior(domain, point):
    x, y = (float(c) for c in point)
    if not domain.contains(x, y):
        raise InvalidInputError(f"point ({x}, {y}) is not interior to the limacon a = {domain.a}")
    return x, y


def dist_to_boundary(domain, point):
    """
    Euclidean distance from an interior point to the boundary.

    A dense angle scan brackets the nearest boundary point, then a bounded
    scalar minimization refines it.

    Args:
        domain (LimaconDomain): Domain.
        point (tuple): Interior point (x, y).

    Returns:
        float: d(point).
    """
    x, y = _check_interior(domain, point)

    def distance(phi):
        bx, by = boundary_point(domain, phi)
        return np.hypot(bx - x, by - y)

    phi = np.linspace(0.0, 2.0 * math.pi, CURVATURE_SCAN, endpoint=False)
    d = distance(phi)
    i = int(np.argmin(d))
    step = 2.0 * math.pi / CURVATURE_SCAN
    _, best = _refine_extremum(distance, phi[i], step, 1.0)
    return min(best, float(d[i]))


def green_bound(domain, x, y):
    """
    D(x, y) = d(x) d(y) min{1, d(x) d(y) / |x - y|^2}, with D(x, x) = d(x)^2.

    Args:
        domain (LimaconDomain): Domain.
        x (tuple): Interior point.
        y (tuple): Interior point.

    Returns:
        float: The bound.
    """
    dx = dist_to_boundary(domain, x)
    dy = dist_to_boundary(domain, y)
    separation = (x[0] - y[0]) ** 2 + (x[1] - y[1]) ** 2
    if separation == 0.0:
        return dx * dy
    return dx * dy * min(1.0, dx * dy / separation)


@dataclass(frozen=True)
class BoundaryCurve:
    """
    Sampled boundary with curvature.

    Attributes:
        a (float): Shape parameter.
        phi, x, y, kappa (np.ndarray): Samples; kappa is NaN at a cusp.
    """

    a: float
    phi: np.ndarray
    x: np.ndarray
    y: np.ndarray
    kappa: np.ndarray

    def rows(self):
        return zip(self.phi.tolist(), self.x.tolist(), self.y.tolist(), self.kappa.tolist())


def boundary_curve(a, n=CURVE_SAMPLES):
    """
    Sample the boundary of the limacon for a in [0, 1/2], cardioid included.

    Args:
        a (float): Shape parameter.
        n (int): Samples on [0, 2 pi].

    Returns:
        BoundaryCurve: (phi, x, y, kappa) samples.
    """
    if not 0.0 <= a <= LIMACON_A_MAX:
        raise InvalidInputError(f"curve parameter must lie in [0, 1/2], got {a}")
    if n < 2:
        raise InvalidInputError("need at least two samples")
    phi = np.linspace(0.0, 2.0 * math.pi, n)
    rho = 1.0 + 2.0 * a * np.cos(phi)
    denominator = 1.0 + 4.0 * a * np.cos(phi) + 4.0 * a ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.where(
            denominator > CUSP_TOL,
            (1.0 + 6.0 * a * np.cos(phi) + 8.0 * a ** 2) / np.abs(denominator) ** 1.5,
            np.nan,
        )
    return BoundaryCurve(a, phi, rho * np.cos(phi), rho * np.sin(phi), kappa)
