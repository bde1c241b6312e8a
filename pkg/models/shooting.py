"""
Shooting value types for the plate lab.
"""

import sys
import os
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exceptions import InvalidInputError
from models.params import SteklovParams
from models.radial import RadialProfile


@dataclass(frozen=True)
class ShootingState:
    """
    State of the first-order radial system at one radius.

    Attributes:
        r (float): Radius.
        u (float): Value of u.
        du (float): u'.
        v (float): v = lap u.
        dv (float): v'.
    """

    r: float
    u: float
    du: float
    v: float
    dv: float

    def __post_init__(self):
        values = (self.r, self.u, self.du, self.v, self.dv)
        if not all(np.isfinite(values)):
            raise InvalidInputError(f"non-finite shooting state {values}")
        if self.r == 0.0 and (self.du != 0.0 or self.dv != 0.0):
            raise InvalidInputError("at r = 0 both radial derivatives must vanish")

    def as_array(self):
        return np.array([self.u, self.du, self.v, self.dv])


@dataclass(frozen=True)
class ResidualScan:
    """
    Table of Q(beta) over a beta ladder.

    Attributes:
        betas (np.ndarray): Scanned values, increasing.
        residuals (np.ndarray): Q at each beta, NaN where no first zero exists.
        sign_changes (list): Index pairs (i, j) of consecutive valid points
            where Q changes sign.
        skipped (np.ndarray): Betas without a first zero.
    """

    betas: np.ndarray
    residuals: np.ndarray
    sign_changes: list
    skipped: np.ndarray

    @property
    def root_count(self):
        return len(self.sign_changes)

    def table(self):
        return [
            (float(b), None if np.isnan(q) else float(q))
            for b, q in zip(self.betas, self.residuals)
        ]


@dataclass(frozen=True, eq=False)
class ShootingResult:
    """
    Positive radial solution of the shooting problem.

    Attributes:
        params (SteklovParams): Problem the result solves.
        beta_star (float): lap u(0) of the normalized profile (u(0) = 1).
        r0 (float): First zero of the normalized profile.
        lam (float): Rescale factor r0 / R.
        profile (RadialProfile): Solution sampled on [0, R].
        residual (float): Final |Q(beta_star)|.
        root_count (int): Sign changes of Q in the scan.
        scan (ResidualScan): The scan that bracketed the root.
        trajectory (Any): The normalized RadialTrajectory, kept for resampling.
        converged (bool): Whether residual meets the residual_tol the solve used.
    """

    params: SteklovParams
    beta_star: float
    r0: float
    lam: float
    profile: RadialProfile
    residual: float
    root_count: int
    scan: Optional[ResidualScan] = None
    trajectory: Any = field(default=None, repr=False)
    converged: bool = True

    @property
    def scale(self):
        """Amplitude factor lambda^{4/(p-1)} of the rescaling."""
        return self.lam ** (4.0 / (self.params.p - 1.0))

    @property
    def u0(self):
        return float(self.profile.u[0])

    def summary(self):
        """Flat record in the report column order."""
        return {
            "p": self.params.p,
            "sigma": self.params.sigma,
            "R": self.params.R,
            "beta_star": self.beta_star,
            "r0": self.r0,
            "lambda": self.lam,
            "u0": self.u0,
            "residual": self.residual,
            "root_count": self.root_count,
        }


@dataclass(frozen=True, eq=False)
class DeficiencyProfile:
    """
    f(r) = -w'' - (sigma/r) w' of the solution rescaled to the unit ball.

    Attributes:
        r (np.ndarray): Interior radii in (0, 1].
        f (np.ndarray): Deficiency values.
        min_f (float): Minimum over the samples.
        f_at_one (float): Value at r = 1.
        limit_at_zero (float): -(1 + sigma) w''(0).
    """

    r: np.ndarray
    f: np.ndarray
    min_f: float
    f_at_one: float
    limit_at_zero: float
