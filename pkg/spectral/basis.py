"""
Fourier-Bessel basis of the disc.

Every angular mode m carries K Dirichlet-Laplacian eigenfunctions
J_m(j_{m,k} r/R) and one boundary mode psi_m, the polynomial
(r/R)^{m+2} - (r/R)^m with its projections on those K functions removed.
All members vanish at r = R. psi_m is orthogonal to the Bessel members in
L^2, in the Dirichlet energy and in ||lap .||^2, and its Laplacian does not
vanish on the boundary, which Steklov data need.

Coefficient arrays have shape (2, M+1, K+1): parity (cos, sin), angular
mode, radial index with the boundary mode last. The sin row of m = 0 is
inactive.
"""

import sys
import os
import math
from functools import lru_cache

import numpy as np
from scipy.special import jn_zeros, jv, jvp, roots_legendre

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import BESSEL_MAX_ORDER, BESSEL_MAX_INDEX
from exceptions import InvalidInputError, RangeError
from models.options import SpectralOptions

COS = 0
SIN = 1


@lru_cache(maxsize=None)
def _zero_table(m):
    zeros = jn_zeros(m, BESSEL_MAX_INDEX)
    # two Newton steps polish the tabulated zeros to rounding
    for _ in range(2):
        zeros = zeros - jv(m, zeros) / jvp(m, zeros, 1)
    return zeros


def bessel_zero(m, k):
    """
    The k-th positive zero j_{m,k} of J_m.

    Args:
        m (int): Order, 0 <= m <= 60.
        k (int): Index, 1 <= k <= 200.

    Returns:
        float: The zero.
    """
    if not (0 <= m <= BESSEL_MAX_ORDER and 1 <= k <= BESSEL_MAX_INDEX):
        raise RangeError(
            f"Bessel zero ({m}, {k}) outside the table m <= {BESSEL_MAX_ORDER}, "
            f"k <= {BESSEL_MAX_INDEX}"
        )
    return float(_zero_table(int(m))[int(k) - 1])


class SpectralBasis:
    """
    Truncated basis with its quadrature.

    Attributes:
        R (float): Disc radius.
        M (int): Max angular mode.
        K (int): Bessel modes per angular mode.
        zeros (np.ndarray): j_{m,k}, shape (M+1, K).
        eigenvalues (np.ndarray): (j/R)^2, shape (M+1, K).
        angular_weight (np.ndarray): 2 pi for m = 0, pi otherwise.
        mass (np.ndarray): Squared L^2 norms, shape (M+1, K+1).
        norms (np.ndarray): L^2 norms, shape (M+1, K+1).
        bilaplace (np.ndarray): ||lap phi||^2, shape (M+1, K+1).
        stiffness (np.ndarray): ||grad phi||^2, shape (M+1, K+1).
        boundary_traces (np.ndarray): d/dr of the radial factor at r = R.
        projections (np.ndarray): Coefficients removed from psi_m, shape (M+1, K).
        active (np.ndarray): Mask of live coefficients, shape (2, M+1, K+1).
    """

    def __init__(self, R=1.0, M=None, K=None, n_radial=None, n_angular=None, options=None):
        options = options or SpectralOptions()
        self.R = float(R)
        self.M = options.M if M is None else int(M)
        self.K = options.K if K is None else int(K)
        self.n_radial = options.n_radial if n_radial is None else int(n_radial)
        self.n_angular = options.n_angular if n_angular is None else int(n_angular)
        SpectralOptions(self.M, self.K, self.n_radial, self.n_angular).validate()
        if not self.R > 0.0:
            raise InvalidInputError(f"disc radius must be positive, got {R}")
        if self.M > BESSEL_MAX_ORDER or self.K > BESSEL_MAX_INDEX:
            raise RangeError("truncation exceeds the Bessel zero table")

        M, K, R = self.M, self.K, self.R
        self.modes = np.arange(M + 1)
        self.zeros = np.vstack([_zero_table(m)[:K] for m in range(M + 1)])
        self.eigenvalues = (self.zeros / R) ** 2
        self.angular_weight = np.where(self.modes == 0, 2.0 * math.pi, math.pi)

        j = self.zeros
        next_order = np.vstack([jv(m + 1, j[m]) for m in range(M + 1)])
        radial_mass = 0.5 * R ** 2 * next_order ** 2
        self.projections = -8.0 * (self.modes[:, None] + 1.0) / (j ** 3 * next_order)

        self._build_quadrature()
        self._build_tables()

        psi_values = self.radial_table[:, K, :]
        psi_lap = self.laplace_table[:, K, :]
        psi_grad2 = -psi_values * psi_lap
        rw = self.radial_weights
        psi_mass = psi_values ** 2 @ rw
        psi_bilaplace = psi_lap ** 2 @ rw
        psi_stiffness = psi_grad2 @ rw

        self.radial_mass = np.hstack([radial_mass, psi_mass[:, None]])
        self.mass = self.radial_mass * self.angular_weight[:, None]
        self.norms = np.sqrt(self.mass)
        self.bilaplace = np.hstack([
            self.eigenvalues ** 2 * radial_mass, psi_bilaplace[:, None],
        ]) * self.angular_weight[:, None]
        self.stiffness = np.hstack([
            self.eigenvalues * radial_mass, psi_stiffness[:, None],
        ]) * self.angular_weight[:, None]

        bessel_traces = (j / R) * np.vstack([jvp(m, j[m], 1) for m in range(M + 1)])
        psi_trace = 2.0 / R - np.sum(self.projections * bessel_traces, axis=1)
        self.boundary_traces = np.hstack([bessel_traces, psi_trace[:, None]])

        self.active = np.ones((2, M + 1, K + 1), dtype=bool)
        self.active[SIN, 0, :] = False

    # -------------------------------------------------------------------------
    # Quadrature and tables
    # -------------------------------------------------------------------------

    def _build_quadrature(self):
        x, w = roots_legendre(self.n_radial)
        self.quad_r = 0.5 * self.R * (x + 1.0)
        # weights of r dr on [0, R]
        self.radial_weights = 0.5 * self.R * w * self.quad_r
        self.quad_theta = 2.0 * math.pi * np.arange(self.n_angular) / self.n_angular
        self.angular_step = 2.0 * math.pi / self.n_angular
        self.cos_table = np.cos(np.outer(self.modes, self.quad_theta))
        self.sin_table = np.sin(np.outer(self.modes, self.quad_theta))

    def _build_tables(self):
        r = self.quad_r
        self.radial_table = self.radial_values(r, 0)
        self.d1_table = self.radial_values(r, 1)
        self.d2_table = self.radial_values(r, 2)
        self.laplace_table = self.laplace_values(r)

    def radial_values(self, r, derivative=0):
        """
        Radial factors (or their r-derivatives) of every basis member.

        Args:
            r (array): Radii in [0, R].
            derivative (int): 0, 1 or 2.

        Returns:
            np.ndarray: Shape (M+1, K+1, len(r)).
        """
        r = np.atleast_1d(np.asarray(r, dtype=float))
        K, R = self.K, self.R
        out = np.empty((self.M + 1, K + 1, r.size))
        x = r / R
        for m in self.modes:
            scale = (self.zeros[m] / R)[:, None]
            arg = self.zeros[m][:, None] * x[None, :]
            if derivative == 0:
                bessel = jv(m, arg)
            else:
                bessel = scale ** derivative * jvp(m, arg, derivative)
            out[m, :K] = bessel
            out[m, K] = self._psi(m, x, derivative) - self.projections[m] @ bessel
        return out

    def laplace_values(self, r):
        """
        Radial factors of lap(phi T_m) / T_m, regular at r = 0.

        Bessel members satisfy lap phi = -(j/R)^2 phi; the polynomial part
        of psi_m contributes (4m + 4) r^m / R^{m+2}.

        Returns:
            np.ndarray: Shape (M+1, K+1, len(r)).
        """
        r = np.atleast_1d(np.asarray(r, dtype=float))
        K, R = self.K, self.R
        out = np.empty((self.M + 1, K + 1, r.size))
        x = r / R
        for m in self.modes:
            bessel = jv(m, self.zeros[m][:, None] * x[None, :])
            out[m, :K] = -self.eigenvalues[m][:, None] * bessel
            polynomial = (4.0 * m + 4.0) * x ** m / R ** 2
            out[m, K] = polynomial + (self.projections[m] * self.eigenvalues[m]) @ bessel
        return out

    def _psi(self, m, x, derivative):
        """(r/R)^{m+2} - (r/R)^m and its r-derivatives."""
        R = self.R
        if derivative == 0:
            return x ** (m + 2) - x ** m
        if derivative == 1:
            low = m * x ** (m - 1) if m >= 1 else 0.0 * x
            return ((m + 2) * x ** (m + 1) - low) / R
        low = m * (m - 1) * x ** (m - 2) if m >= 2 else 0.0 * x
        return ((m + 2) * (m + 1) * x ** m - low) / R ** 2

    def angular_values(self, theta, derivative=0):
        """
        Angular factors cos(m theta), sin(m theta) or their theta-derivatives.

        Returns:
            np.ndarray: Shape (2, M+1, len(theta)).
        """
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        mt = np.outer(self.modes, theta)
        m = self.modes[:, None]
        if derivative == 0:
            return np.stack([np.cos(mt), np.sin(mt)])
        if derivative == 1:
            return np.stack([-m * np.sin(mt), m * np.cos(mt)])
        return np.stack([-(m ** 2) * np.cos(mt), -(m ** 2) * np.sin(mt)])

    # -------------------------------------------------------------------------
    # Coefficient plumbing
    # -------------------------------------------------------------------------

    @property
    def shape(self):
        return (2, self.M + 1, self.K + 1)

    @property
    def size(self):
        return int(self.active.sum())

    def zeros_like(self):
        return np.zeros(self.shape)

    def pack(self, coeffs):
        """Live coefficients as a flat vector."""
        return np.asarray(coeffs, dtype=float)[self.active]

    def unpack(self, vector):
        coeffs = self.zeros_like()
        coeffs[self.active] = vector
        return coeffs

    def index(self, m, k, parity=COS):
        """
        Position of a member in the coefficient array.

        Args:
            m (int): Angular mode.
            k (int): Radial index, 1..K for Bessel members, K+1 for psi_m.
            parity (int): COS or SIN.
        """
        if not (0 <= m <= self.M and 1 <= k <= self.K + 1):
            raise RangeError(f"no basis member ({m}, {k})")
        if parity == SIN and m == 0:
            raise RangeError("m = 0 has no sin member")
        return (parity, m, k - 1)

    def grid_from_radial(self, radial):
        """Sum sum_m A[par, m, i] T_par,m(theta_j) on the quadrature grid."""
        return radial[COS].T @ self.cos_table + radial[SIN].T @ self.sin_table

    def project_grid(self, values, table=None):
        """
        Adjoint of evaluation: integrals of grid values against every member.

        Args:
            values (np.ndarray): Shape (n_radial, n_angular), already
                multiplied by any weight except the quadrature weights.
            table (np.ndarray, optional): Radial table, defaults to values.

        Returns:
            np.ndarray: Coefficient-shaped integrals.
        """
        table = self.radial_table if table is None else table
        weighted = values * self.radial_weights[:, None] * self.angular_step
        out = np.empty(self.shape)
        out[COS] = np.einsum("ij,mj,mki->mk", weighted, self.cos_table, table, optimize=True)
        out[SIN] = np.einsum("ij,mj,mki->mk", weighted, self.sin_table, table, optimize=True)
        out[~self.active] = 0.0
        return out

    def quadrature_weights(self):
        """Area weights of the tensor grid, shape (n_radial, n_angular)."""
        return np.outer(self.radial_weights, np.full(self.n_angular, self.angular_step))

    def quadrature_points(self):
        """Cartesian coordinates of the tensor grid."""
        rr, tt = np.meshgrid(self.quad_r, self.quad_theta, indexing="ij")
        return rr * np.cos(tt), rr * np.sin(tt)

    def __repr__(self):
        return (f"SpectralBasis(R={self.R}, M={self.M}, K={self.K}, "
                f"quadrature={self.n_radial}x{self.n_angular})")
