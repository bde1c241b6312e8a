"""
Solver option objects.

Each options object is a frozen dataclass whose defaults come from
constants.py; validate() raises InvalidInputError on the first bad value.
"""

import sys
import os
from dataclasses import dataclass, field

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import (
    SERIES_START, IVP_RTOL, IVP_ATOL, IVP_METHOD, R_MAX,
    BETA_SCAN_LO, BETA_SCAN_HI, BETA_SCAN_POINTS, EDGE_BISECTIONS, EDGE_SAMPLE_DECADES,
    RESIDUAL_TOL, PROFILE_NODES,
    SPECTRAL_M, SPECTRAL_K, QUAD_RADIAL, QUAD_ANGULAR,
    DESCENT_GTOL, DESCENT_FTOL, DESCENT_MAX_ITER, DESCENT_MEMORY, DEFAULT_SEED,
    CELL_RINGS, CELL_SECTORS,
)
from exceptions import InvalidInputError


@dataclass(frozen=True)
class IntegratorOptions:
    """
    Controls for the radial initial value problem.

    Attributes:
        eps (float): Series-start radius.
        rtol (float): Relative tolerance.
        atol (float): Absolute tolerance.
        method (str): scipy solve_ivp method name.
        r_max (float): Radius beyond which the trajectory counts as having no zero.
    """

    eps: float = SERIES_START
    rtol: float = IVP_RTOL
    atol: float = IVP_ATOL
    method: str = IVP_METHOD
    r_max: float = R_MAX

    def validate(self):
        if not 0.0 < self.eps < self.r_max:
            raise InvalidInputError(f"series start must lie in (0, r_max), got {self.eps}")
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise InvalidInputError("integrator tolerances must be positive")
        return self


@dataclass(frozen=True)
class ShootingOptions:
    """
    Controls for the beta scan and root solve.

    Attributes:
        beta_lo (float): Most negative scanned beta.
        beta_hi (float): Least negative scanned beta.
        scan_points (int): Log-spaced scan size.
        edge_bisections (int): Bisection steps locating the shootable edge.
        edge_sample_decades (int): Geometric samples toward the edge.
        residual_tol (float): Target |Q| at the root.
        profile_nodes (int): Samples of the rescaled profile.
        integrator (IntegratorOptions): IVP controls.
    """

    beta_lo: float = BETA_SCAN_LO
    beta_hi: float = BETA_SCAN_HI
    scan_points: int = BETA_SCAN_POINTS
    edge_bisections: int = EDGE_BISECTIONS
    edge_sample_decades: int = EDGE_SAMPLE_DECADES
    residual_tol: float = RESIDUAL_TOL
    profile_nodes: int = PROFILE_NODES
    integrator: IntegratorOptions = field(default_factory=IntegratorOptions)

    def validate(self):
        if not self.beta_lo < self.beta_hi < 0.0:
            raise InvalidInputError("scan bracket must satisfy beta_lo < beta_hi < 0")
        if self.scan_points < 2:
            raise InvalidInputError("scan needs at least two points")
        self.integrator.validate()
        return self


@dataclass(frozen=True)
class SpectralOptions:
    """
    Truncation and quadrature of the disc basis.

    Attributes:
        M (int): Max angular mode.
        K (int): Bessel modes per angular mode.
        n_radial (int): Gauss-Legendre radial points.
        n_angular (int): Uniform angular points.
    """

    M: int = SPECTRAL_M
    K: int = SPECTRAL_K
    n_radial: int = QUAD_RADIAL
    n_angular: int = QUAD_ANGULAR

    def validate(self):
        if self.M < 0 or self.K < 1:
            raise InvalidInputError("need M >= 0 and K >= 1")
        if self.n_angular < 2 * self.M + 2:
            raise InvalidInputError("angular quadrature too coarse for M")
        return self


@dataclass(frozen=True)
class DescentOptions:
    """
    Controls for the ground-state descent.

    Attributes:
        gtol (float): Gradient norm tolerance in preconditioned units.
        ftol (float): Relative objective change tolerance.
        max_iter (int): Iteration cap.
        memory (int): L-BFGS correction pairs.
        seed (int): Seed of the random initial coefficients.
        asymmetric (bool): Start from a deliberately non-radial seed.
    """

    gtol: float = DESCENT_GTOL
    ftol: float = DESCENT_FTOL
    max_iter: int = DESCENT_MAX_ITER
    memory: int = DESCENT_MEMORY
    seed: int = DEFAULT_SEED
    asymmetric: bool = False

    def validate(self):
        if self.max_iter < 1:
            raise InvalidInputError("max_iter must be positive")
        return self


@dataclass(frozen=True)
class RearrangeOptions:
    """
    Exact annular polar cells for rearrangement.

    Attributes:
        rings (int): Cells along the radius.
        sectors (int): Cells per ring.
    """

    rings: int = CELL_RINGS
    sectors: int = CELL_SECTORS

    def validate(self):
        if self.rings < 2 or self.sectors < 4:
            raise InvalidInputError("rearrangement needs at least 2 rings and 4 sectors")
        return self
