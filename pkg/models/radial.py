"""
Radial value types for the plate lab.

RadialGrid holds the radial variable, RadialProfile the sampled data
(u, u', lap u, (lap u)') that the shooting solver hands to everyone else.
"""

import sys
import os
from dataclasses import dataclass, field

import numpy as np

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import MIN_GRID_NODES
from exceptions import InvalidInputError


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """
    Strictly increasing radii covering [0, R].

    Attributes:
        nodes (np.ndarray): Radii with nodes[0] = 0 and nodes[-1] = R.
        R (float): Outer radius.
    """

    nodes: np.ndarray
    R: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < MIN_GRID_NODES:
            raise InvalidInputError(
                f"a radial grid needs at least {MIN_GRID_NODES} nodes, got {nodes.size}"
            )
        if not self.R > 0.0:
            raise InvalidInputError(f"grid radius must be positive, got {self.R}")
        if nodes[0] != 0.0 or not np.isclose(nodes[-1], self.R, rtol=0.0, atol=1e-14 * self.R):
            raise InvalidInputError("grid must start at 0 and end at R")
        if not np.all(np.diff(nodes) > 0.0):
            raise InvalidInputError("grid nodes must be strictly increasing")

    @classmethod
    def uniform(cls, R, n):
        """
        Build an equispaced grid.

        Args:
            R (float): Outer radius.
            n (int): Number of nodes, including both endpoints.

        Returns:
            RadialGrid: The grid.
        """
        return cls(np.linspace(0.0, R, n), R)

    def __len__(self):
        return self.nodes.size

    @property
    def spacing(self):
        return np.diff(self.nodes)


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """
    Sampled radial data on a grid.

    Attributes:
        grid (RadialGrid): Sample radii.
        u (np.ndarray): u at the nodes.
        du (np.ndarray): u' at the nodes.
        lap (np.ndarray): lap u at the nodes.
        dlap (np.ndarray): (lap u)' at the nodes.
    """

    grid: RadialGrid
    u: np.ndarray
    du: np.ndarray
    lap: np.ndarray
    dlap: np.ndarray

    def __post_init__(self):
        n = len(self.grid)
        for name in ("u", "du", "lap", "dlap"):
            values = np.asarray(getattr(self, name), dtype=float)
            if values.shape != (n,):
                raise InvalidInputError(
                    f"profile array {name} has shape {values.shape}, grid has {n} nodes"
                )
            if not np.all(np.isfinite(values)):
                raise InvalidInputError(f"profile array {name} is not finite")
            object.__setattr__(self, name, values)

    @property
    def r(self):
        return self.grid.nodes

    @property
    def R(self):
        return self.grid.R

    def columns(self):
        """Plot-ready columns in a fixed order."""
        return {"r": self.r, "u": self.u, "du": self.du, "lap": self.lap, "dlap": self.dlap}


@dataclass(frozen=True)
class MonotonicityReport:
    """
    Outcome of the strict sign checks u' < 0 on (0, R) and (lap u)' > 0 on (0, R].

    The flags are strict. A node whose value sits in [-tolerance, 0] still
    fails the flag but does not count as a hard violation.
    """

    u_strictly_decreasing: bool
    lap_strictly_increasing: bool
    du_worst: float
    du_worst_r: float
    dlap_worst: float
    dlap_worst_r: float
    tolerance: float
    within_tolerance: bool = field(default=True)

    @property
    def holds(self):
        return self.u_strictly_decreasing and self.lap_strictly_increasing
