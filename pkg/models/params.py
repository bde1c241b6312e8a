"""
Problem parameters for the plate lab.

This module defines SteklovParams, the key every run is indexed by.
"""

import sys
import os
from dataclasses import dataclass, asdict

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import LIMACON_A_MAX
from exceptions import InvalidInputError

DISC = "disc"
LIMACON = "limacon"


@dataclass(frozen=True)
class SteklovParams:
    """
    Parameters of the semilinear Steklov problem.

    The curvature of the disc is derived from R and never stored.

    Attributes:
        p (float): Exponent of the nonlinearity |u|^{p-1}u, p > 0 and p != 1.
        sigma (float): Boundary parameter, sigma > -1.
        R (float): Disc radius, R > 0.
        domain (str): "disc" or "limacon".
        a (float): Limacon shape parameter in [0, 1/2); ignored on the disc.
    """

    p: float
    sigma: float
    R: float = 1.0
    domain: str = DISC
    a: float = 0.0

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise InvalidInputError("; ".join(message for _, message in problems))

    def violations(self):
        """
        Collect every violated invariant instead of stopping at the first one.

        Returns:
            list: (field, message) pairs.
        """
        problems = []
        if not self.p > 0.0 or self.p == 1.0:
            problems.append(("p", f"p must satisfy p > 0 and p != 1, got {self.p}"))
        if not self.sigma > -1.0:
            problems.append(("sigma", f"sigma > -1 required, got {self.sigma}"))
        if not self.R > 0.0:
            problems.append(("R", f"R > 0 required, got {self.R}"))
        if self.domain not in (DISC, LIMACON):
            problems.append(("domain", f"unknown domain {self.domain!r}"))
        if not 0.0 <= self.a < LIMACON_A_MAX:
            problems.append(("a", f"a must lie in [0, 1/2), got {self.a}"))
        return problems

    @property
    def kappa(self):
        """Boundary curvature of the disc of radius R."""
        return 1.0 / self.R

    @property
    def superlinear(self):
        """True for p > 1 (Nehari regime), False for p in (0, 1)."""
        return self.p > 1.0

    def with_radius(self, R):
        """Return a copy with a different radius."""
        return SteklovParams(self.p, self.sigma, R, self.domain, self.a)

    def with_sigma(self, sigma):
        """Return a copy with a different boundary parameter."""
        return SteklovParams(self.p, sigma, self.R, self.domain, self.a)

    def as_dict(self):
        return asdict(self)
