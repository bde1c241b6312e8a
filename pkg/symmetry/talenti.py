"""
Talenti comparison and the boundary chain behind radial symmetry.

v solves -lap v = g* in B_R with v(R) = 0 for a rearranged source g*.
Written in the area variable a = pi t^2 this is

    v(t) = int_{pi t^2}^{pi R^2} G(a) / (4 pi a) da,   G(a) = int_0^a g*(s) ds,

and with g* a step function G is piecewise linear, so every band
integrates in closed form.
"""

import sys
import os
import math
import logging
from dataclasses import dataclass, field as dataclass_field

import numpy as np

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import TALENTI_TOL, CHAIN_EQUALITY_TOL
from exceptions import InvalidInputError, RangeError
from models.options import RearrangeOptions
from spectral.basis import COS
from spectral.field import boundary_coefficients, grid_derivatives
from spectral.forms import poisson_solve, nonlinear_integral
from symmetry.rearrange import (
    schwarz_rearrange, sample_polar, quadrature_samples,
)

logger = logging.getLogger(__name__)

NEGATIVE_SOURCE_TOL = 1e-12
# left limits are read just inside each radius; cumulative cell areas carry rounding
LEFT_LIMIT_SHIFT = 1e-9


def _band_integrals(lo, hi, offset, value):
    """int_lo^hi (offset + value a) / a da, with offset = 0 allowed at lo = 0."""
    safe_lo = np.where(lo > 0.0, lo, 1.0)
    log_ratio = np.where(lo > 0.0, np.log(hi / safe_lo), 0.0)
    return np.where(offset != 0.0, offset * log_ratio, 0.0) + value * (hi - lo)


def radial_potential(profile, radii):
    """
    Solution v of -lap v = g* with v(R) = 0 for a step profile g*.

    Args:
        profile (RadialDecreasingProfile): Rearranged source.
        radii (array): Radii in [0, R].

    Returns:
        np.ndarray: v at the radii.
    """
    radii = np.asarray(radii, dtype=float)
    upper = profile.breakpoints
    lower = np.concatenate(([0.0], upper[:-1]))
    g = profile.values
    cumulative = np.concatenate(([0.0], np.cumsum(g * (upper - lower))))[:-1]
    offset = cumulative - g * lower
    full = _band_integrals(lower, upper, offset, g)
    tail = np.concatenate((np.cumsum(full[::-1])[::-1][1:], [0.0]))

    a = math.pi * np.clip(radii, 0.0, profile.R) ** 2
    band = np.clip(np.searchsorted(upper, a, side="right"), 0, g.size - 1)
    partial = _band_integrals(a, upper[band], offset[band], g[band])
    return (partial + tail[band]) / (4.0 * math.pi)


@dataclass
class TalentiReport:
    """
    Pointwise comparison u* <= v on a radial test grid.

    Attributes:
        radii (np.ndarray): Test radii (outer ring edges).
        u_star (np.ndarray): Rearranged solution, left limits at the radii.
        v (np.ndarray): Symmetrized-problem solution at the radii.
        max_excess (float): max(u* - v); the comparison holds when <= tol.
        max_gap (float): max |u* - v|.
        tolerance (float): Acceptance tolerance.
    """

    radii: np.ndarray
    u_star: np.ndarray
    v: np.ndarray
    max_excess: float
    max_gap: float
    tolerance: float = TALENTI_TOL
    u_profile: object = dataclass_field(default=None, repr=False)
    f_profile: object = dataclass_field(default=None, repr=False)
    solution: object = dataclass_field(default=None, repr=False)

    @property
    def holds(self):
        return self.max_excess <= self.tolerance


def talenti_compare(source, basis, options=None, tol=TALENTI_TOL):
    """
    Compare the rearranged solution of -lap u = f with the solution of the
    symmetrized problem -lap v = f*.

    u is taken with lower cell representatives and f with upper ones, so
    the discrete comparison errs on the safe side.

    Args:
        source (callable): Nonnegative f(r, theta).
        basis (SpectralBasis): Disc basis for the Galerkin solve.
        options (RearrangeOptions, optional): Cell counts.
        tol (float): Acceptance tolerance of the report.

    Returns:
        TalentiReport: Both profiles and the comparison.
    """
    options = (options or RearrangeOptions()).validate()
    f_samples = sample_polar(source, basis.R, options, representative="upper")
    f_lower = sample_polar(source, basis.R, options, representative="lower")
    worst = float(np.min(f_lower.values))
    if worst < -NEGATIVE_SOURCE_TOL:
        raise InvalidInputError(f"source must be nonnegative, found {worst:.3e}")

    u = poisson_solve(basis, source)
    u_profile = schwarz_rearrange(sample_polar(u, options=options, representative="lower"))
    f_profile = schwarz_rearrange(f_samples)

    radii = np.linspace(0.0, basis.R, options.rings + 1)[1:]
    u_star = u_profile.at_measure(math.pi * radii ** 2 * (1.0 - LEFT_LIMIT_SHIFT))
    v = radial_potential(f_profile, radii)
    difference = u_star - v
    report = TalentiReport(
        radii=radii,
        u_star=u_star,
        v=v,
        max_excess=float(np.max(difference)),
        max_gap=float(np.max(np.abs(difference))),
        tolerance=tol,
        u_profile=u_profile,
        f_profile=f_profile,
        solution=u,
    )
    logger.debug("Talenti: max(u* - v) = %.3e, max|u* - v| = %.3e", report.max_excess, report.max_gap)
    return report


# -----------------------------------------------------------------------------
# Boundary chain
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainRelation:
    """
    One relation lhs <= rhs (or lhs = rhs) of the chain.

    Attributes:
        name (str): "norm", "laplacian" or "boundary".
        lhs (float): Left side.
        rhs (float): Right side.
        equality (bool): Whether the relation is an equality.
    """

    name: str
    lhs: float
    rhs: float
    equality: bool = False

    @property
    def slack(self):
        return self.rhs - self.lhs

    def holds(self, tol):
        scale = max(1.0, abs(self.lhs), abs(self.rhs))
        if self.equality:
            return abs(self.slack) <= tol * scale
        return self.slack >= -tol * scale


@dataclass
class ChainReport:
    """
    The comparison chain for a computed ground state u and the radial v
    with -lap v = (-lap u)*.

    Attributes:
        norm (ChainRelation): ||u*||_{p+1} <= ||v||_{p+1}, with ||u||_{p+1}
            kept in norm_u.
        laplacian (ChainRelation): ||lap u||_2 = ||lap v||_2.
        boundary (ChainRelation): (1 - sigma) int u_n^2 <= (1 - sigma) int v_n^2,
            None when not requested.
        norm_u (float): ||u||_{p+1} by quadrature.
        laplacian_star (float): ||(lap u)*||_2.
        v (SpectralField): The comparison function.
    """

    norm: ChainRelation
    laplacian: ChainRelation
    boundary: ChainRelation
    norm_u: float
    laplacian_star: float
    v: object = dataclass_field(default=None, repr=False)

    def relations(self):
        return [rel for rel in (self.norm, self.laplacian, self.boundary) if rel is not None]

    def holds(self, tol=CHAIN_EQUALITY_TOL):
        return all(rel.holds(tol) for rel in self.relations())


def boundary_chain_check(ground, params, include_boundary=True):
    """
    Evaluate the norm, Laplacian and boundary relations on a ground state.

    v is the Galerkin solution of -lap v = (-lap u)* with the rearranged
    source read off at the quadrature radii.

    Args:
        ground (GroundStateReport): Disc ground state.
        params (SteklovParams): Problem parameters.
        include_boundary (bool): Evaluate the boundary relation, which needs
            sigma >= 1.

    Returns:
        ChainReport: All relations with their slack.
    """
    if include_boundary and params.sigma < 1.0:
        raise RangeError(
            f"boundary comparison needs sigma >= 1, got sigma = {params.sigma}"
        )
    u = ground.field
    basis = u.basis
    R = basis.R
    q = params.p + 1.0

    derivatives = grid_derivatives(u)
    u_samples = quadrature_samples(basis, derivatives["u"])
    g_samples = quadrature_samples(basis, -derivatives["lap"])
    u_star = schwarz_rearrange(u_samples)
    g_star = schwarz_rearrange(g_samples)

    laplacian = ChainRelation("laplacian", g_samples.norm(2.0), g_star.norm(2.0), equality=True)

    v = poisson_solve(basis, lambda r, theta: g_star.at_radius(r) + 0.0 * theta)
    v_norm = nonlinear_integral(v, params.p) ** (1.0 / q)
    norm = ChainRelation("norm", u_star.norm(q), v_norm)

    boundary = None
    if include_boundary:
        traces = boundary_coefficients(u)
        # int v_n^2 = (int u_n)^2 / |dB_R| since v is radial with the same flux
        flux = R * basis.angular_weight[0] * traces[COS, 0]
        u_side = R * float(np.sum(basis.angular_weight[None] * traces ** 2))
        v_side = flux ** 2 / (2.0 * math.pi * R)
        factor = 1.0 - params.sigma
        boundary = ChainRelation("boundary", factor * u_side, factor * v_side)

    report = ChainReport(norm, laplacian, boundary, u_samples.norm(q), g_star.norm(2.0), v)
    for rel in report.relations():
        logger.debug("chain %s: lhs = %.12g, rhs = %.12g, slack = %.3e", rel.name, rel.lhs, rel.rhs, rel.slack)
    return report
