"""
Radial calculus shared by the solvers.

This module provides the integral identities linking u' and u to lap u for
radial functions, the finite-difference radial Laplacian, and the strict
monotonicity checks on sampled profiles.
"""

import sys
import os
import logging

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import roots_legendre

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import CELL_GAUSS_POINTS, CONSISTENCY_TOL, MONOTONE_TOL
from exceptions import InvalidInputError
from models.radial import RadialGrid, MonotonicityReport

logger = logging.getLogger(__name__)


def _check_samples(samples, grid, name):
    if not isinstance(grid, RadialGrid):
        raise InvalidInputError(f"{name} needs a RadialGrid, got {type(grid).__name__}")
    values = np.asarray(samples, dtype=float)
    if values.shape != (len(grid),):
        raise InvalidInputError(
            f"{name}: {values.size} samples for a grid of {len(grid)} nodes"
        )
    return values


def _check_dimension(N):
    if int(N) != N or N < 2:
        raise InvalidInputError(f"dimension N must be an integer >= 2, got {N}")
    return int(N)


def _cell_nodes(r):
    """Gauss-Legendre nodes and weights mapped onto every grid cell."""
    x, w = roots_legendre(CELL_GAUSS_POINTS)
    a = r[:-1, None]
    h = np.diff(r)[:, None]
    s = a + 0.5 * h * (x[None, :] + 1.0)
    weights = 0.5 * h * w[None, :]
    return s, weights


def _cumulative(cell_integrals):
    return np.concatenate(([0.0], np.cumsum(cell_integrals)))


def laplacian_to_gradient(lap_samples, grid, N=2):
    """
    Recover u' from lap u through t^{N-1} u'(t) = int_0^t s^{N-1} lap u(s) ds.

    lap u is interpolated by a not-a-knot cubic spline and s^{N-1} times the
    spline is integrated exactly on every cell, so cubic data are reproduced
    to rounding.

    Args:
        lap_samples (array): lap u at the grid nodes.
        grid (RadialGrid): Sample radii.
        N (int): Space dimension, N >= 2.

    Returns:
        np.ndarray: u' at the nodes, with u'(0) = 0.
    """
    lap = _check_samples(lap_samples, grid, "laplacian_to_gradient")
    N = _check_dimension(N)
    r = grid.nodes

    spline = CubicSpline(r, lap)
    s, weights = _cell_nodes(r)
    flux = _cumulative(np.sum(weights * s ** (N - 1) * spline(s), axis=1))

    du = np.zeros_like(r)
    du[1:] = flux[1:] / r[1:] ** (N - 1)
    return du


def green_log_reconstruct(lap_samples, grid):
    """
    Reconstruct u from lap u in two dimensions with u(0) = 0.

    Uses u(t) = int_0^t s log(t/s) lap u(s) ds, split as
    log(t) A(t) - B(t) with A = int s lap u and B = int s log(s) lap u.
    The first cell carries the s log s endpoint and is integrated in closed
    form against the spline's local cubic.

    Args:
        lap_samples (array): lap u at the grid nodes.
        grid (RadialGrid): Sample radii.

    Returns:
        np.ndarray: u at the nodes.
    """
    lap = _check_samples(lap_samples, grid, "green_log_reconstruct")
    r = grid.nodes

    spline = CubicSpline(r, lap)
    s, weights = _cell_nodes(r)
    g = spline(s)
    a_cells = np.sum(weights * s * g, axis=1)
    b_cells = np.sum(weights * s * np.log(s) * g, axis=1)

    # cell [0, h]: spline is sum_k c[k] s^(3-k) there since r[0] = 0
    h = r[1]
    exact = 0.0
    for k in range(4):
        n = 4 - k
        exact += spline.c[k, 0] * h ** (n + 1) / (n + 1) * (np.log(h) - 1.0 / (n + 1))
    b_cells[0] = exact

    a_cum = _cumulative(a_cells)
    b_cum = _cumulative(b_cells)

    u = np.zeros_like(r)
    u[1:] = np.log(r[1:]) * a_cum[1:] - b_cum[1:]
    return u


def _fd_weights(x0, xs, order):
    """Finite-difference weights at x0 from the stencil xs (Taylor matching)."""
    xs = np.asarray(xs, dtype=float) - x0
    m = xs.size
    powers = np.vstack([xs ** k for k in range(m)])
    factorials = np.cumprod(np.concatenate(([1.0], np.arange(1, m, dtype=float))))
    rhs = np.zeros(m)
    rhs[order] = factorials[order]
    return np.linalg.solve(powers, rhs)


def radial_laplacian(u_samples, grid, N=2):
    """
    Second-order finite-difference radial Laplacian u'' + (N-1)/r u'.

    Interior nodes use the three-point second difference, the endpoint r = R
    a four-point one-sided stencil, and r = 0 the symmetric limit N u''(0)
    with u''(0) = 2 (u_1 - u_0) / h_0^2.

    Args:
        u_samples (array): u at the grid nodes.
        grid (RadialGrid): Sample radii.
        N (int): Space dimension.

    Returns:
        np.ndarray: lap u at the nodes.
    """
    u = _check_samples(u_samples, grid, "radial_laplacian")
    N = _check_dimension(N)
    r = grid.nodes
    n = r.size
    if n < 3:
        raise InvalidInputError("radial_laplacian needs at least 3 nodes")

    du = np.gradient(u, r, edge_order=2)
    h = np.diff(r)
    d2u = np.empty_like(u)
    hl, hr = h[:-1], h[1:]
    d2u[1:-1] = 2.0 * (hl * u[2:] - (hl + hr) * u[1:-1] + hr * u[:-2]) / (hl * hr * (hl + hr))
    stencil = slice(n - min(4, n), n)
    d2u[-1] = _fd_weights(r[-1], r[stencil], 2) @ u[stencil]
    d2u[0] = 2.0 * (u[1] - u[0]) / h[0] ** 2

    lap = np.empty_like(u)
    lap[0] = N * d2u[0]
    lap[1:] = d2u[1:] + (N - 1) / r[1:] * du[1:]
    return lap


def profile_consistency(profile, N=2):
    """
    Largest mismatch between the stored u' and the one rebuilt from lap u.

    Args:
        profile (RadialProfile): Profile to check.
        N (int): Space dimension.

    Returns:
        float: max |du - laplacian_to_gradient(lap)| relative to max(1, max|du|).
    """
    rebuilt = laplacian_to_gradient(profile.lap, profile.grid, N)
    scale = max(1.0, float(np.max(np.abs(profile.du))))
    return float(np.max(np.abs(rebuilt - profile.du))) / scale


def check_profile_consistency(profile, N=2, tol=CONSISTENCY_TOL):
    """Raise InvalidInputError when the stored du disagrees with lap beyond tol."""
    error = profile_consistency(profile, N)
    if error > tol:
        raise InvalidInputError(f"profile du inconsistent with lap: {error:.3e} > {tol:.1e}")
    return error


def check_monotonicity(profile, tol=MONOTONE_TOL):
    """
    Strict sign checks u' < 0 on (0, R) and (lap u)' > 0 on (0, R].

    Args:
        profile (RadialProfile): Profile to check.
        tol (float): Values within tol of the wrong sign are reported as
            marginal rather than hard violations.

    Returns:
        MonotonicityReport: Flags plus the worst values and their radii.
    """
    r = profile.r
    du_inner = profile.du[1:-1]
    dlap_inner = profile.dlap[1:]

    i = int(np.argmax(du_inner))
    j = int(np.argmin(dlap_inner))
    du_worst = float(du_inner[i])
    dlap_worst = float(dlap_inner[j])

    report = MonotonicityReport(
        u_strictly_decreasing=bool(np.all(du_inner < 0.0)),
        lap_strictly_increasing=bool(np.all(dlap_inner > 0.0)),
        du_worst=du_worst,
        du_worst_r=float(r[1 + i]),
        dlap_worst=dlap_worst,
        dlap_worst_r=float(r[1 + j]),
        tolerance=tol,
        within_tolerance=du_worst <= tol and dlap_worst >= -tol,
    )
    if not report.holds:
        logger.debug(
            "monotonicity fails: max u' = %.3e at r = %.4f, min (lap u)' = %.3e at r = %.4f",
            du_worst, report.du_worst_r, dlap_worst, report.dlap_worst_r,
        )
    return report
