"""
Fields expanded in a SpectralBasis.

A field is the coefficient array of a basis together with the basis itself.
Evaluation is separable: radial coefficient profiles are formed first and
then combined with the angular factors.
"""

import sys
import os
from dataclasses import dataclass, field as dataclass_field

import numpy as np

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exceptions import InvalidInputError, RangeError
from spectral.basis import SpectralBasis, COS, SIN

_RADIUS_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    Real field sum c[par, m, k] phi_{m,k}(r) T_{par,m}(theta).

    Attributes:
        basis (SpectralBasis): Basis the coefficients refer to.
        coeffs (np.ndarray): Shape (2, M+1, K+1); the sin row of m = 0 is zero.
    """

    basis: SpectralBasis
    coeffs: np.ndarray = dataclass_field(repr=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.shape != self.basis.shape:
            raise InvalidInputError(
                f"coefficients of shape {coeffs.shape} for a basis of shape {self.basis.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidInputError("field coefficients must be finite")
        if np.any(coeffs[SIN, 0] != 0.0):
            raise InvalidInputError("m = 0 has no sin member")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, basis):
        return cls(basis, basis.zeros_like())

    @classmethod
    def from_vector(cls, basis, vector):
        return cls(basis, basis.unpack(vector))

    @classmethod
    def single(cls, basis, m, k, parity=COS, amplitude=1.0):
        """The field amplitude * phi_{m,k} T_{par,m}."""
        coeffs = basis.zeros_like()
        coeffs[basis.index(m, k, parity)] = amplitude
        return cls(basis, coeffs)

    @classmethod
    def from_function(cls, basis, fn):
        """
        L^2 projection of fn(r, theta) onto the basis.

        Args:
            basis (SpectralBasis): Target basis.
            fn (callable): Vectorized function of polar coordinates.

        Returns:
            SpectralField: The projection.
        """
        rr, tt = np.meshgrid(basis.quad_r, basis.quad_theta, indexing="ij")
        values = np.broadcast_to(np.asarray(fn(rr, tt), dtype=float), rr.shape)
        return cls(basis, basis.project_grid(values) / basis.mass[None])

    @property
    def vector(self):
        return self.basis.pack(self.coeffs)

    def scaled(self, t):
        return SpectralField(self.basis, t * self.coeffs)

    def __add__(self, other):
        if other.basis is not self.basis:
            raise InvalidInputError("fields live in different bases")
        return SpectralField(self.basis, self.coeffs + other.coeffs)

    def is_zero(self):
        return not np.any(self.coeffs)

    def mass_by_mode(self):
        """Squared L^2 mass per angular mode, shape (M+1,)."""
        return np.sum(self.coeffs ** 2 * self.basis.mass[None], axis=(0, 2))

    def l2_norm_squared(self):
        return float(np.sum(self.mass_by_mode()))

    def radial_profiles(self, table):
        """Coefficient sums A[par, m, i] against a radial table."""
        return np.einsum("pmk,mki->pmi", self.coeffs, table, optimize=True)

    def on_quadrature(self):
        """Values on the (n_radial, n_angular) quadrature grid."""
        return self.basis.grid_from_radial(self.radial_profiles(self.basis.radial_table))


def evaluate(field, r, theta):
    """
    Pointwise values of a field.

    Args:
        field (SpectralField): Field to evaluate.
        r (array): Radii in [0, R].
        theta (array): Angles, broadcast against r.

    Returns:
        np.ndarray: Values with the broadcast shape of r and theta.
    """
    basis = field.basis
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    if np.any(r < 0.0) or np.any(r > basis.R * (1.0 + _RADIUS_SLACK)):
        raise RangeError(f"evaluation radius outside [0, {basis.R}]")
    flat_r = np.minimum(r.ravel(), basis.R)
    radial = basis.radial_values(flat_r)
    angular = basis.angular_values(theta.ravel())
    values = np.einsum("pmk,mkn,pmn->n", field.coeffs, radial, angular, optimize=True)
    return values.reshape(r.shape)


def evaluate_grid(field, r, theta, laplacian=False):
    """
    Values (or lap u) on the tensor grid r x theta.

    Returns:
        np.ndarray: Shape (len(r), len(theta)).
    """
    basis = field.basis
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0.0) or np.any(r > basis.R * (1.0 + _RADIUS_SLACK)):
        raise RangeError(f"evaluation radius outside [0, {basis.R}]")
    r = np.minimum(r, basis.R)
    table = basis.laplace_values(r) if laplacian else basis.radial_values(r)
    profiles = field.radial_profiles(table)
    angular = basis.angular_values(theta)
    return profiles[COS].T @ angular[COS] + profiles[SIN].T @ angular[SIN]


def boundary_coefficients(field):
    """sum_k c[par, m, k] b_{m,k}, shape (2, M+1)."""
    return np.einsum("pmk,mk->pm", field.coeffs, field.basis.boundary_traces)


def normal_derivative_trace(field, theta):
    """
    Outer normal derivative u_n = u_r at r = R.

    Args:
        field (SpectralField): Field.
        theta (array): Boundary angles.

    Returns:
        np.ndarray: u_n at the angles.
    """
    angular = field.basis.angular_values(theta)
    trace = np.einsum("pm,pmn->n", boundary_coefficients(field), angular)
    return trace.reshape(np.shape(theta))


def radial_fraction(field):
    """
    Share of the squared L^2 mass carried by the m = 0 modes.

    Args:
        field (SpectralField): Nonzero field.

    Returns:
        float: Value in [0, 1].
    """
    by_mode = field.mass_by_mode()
    total = float(np.sum(by_mode))
    if total <= 0.0:
        raise InvalidInputError("radial_fraction of the zero field")
    return float(by_mode[0]) / total


def grid_derivatives(field):
    """
    Polar derivatives on the quadrature grid.

    Returns:
        dict: u, u_r, u_rr, u_t, u_tt, u_rt, lap, each (n_radial, n_angular).
    """
    basis = field.basis
    a0 = field.radial_profiles(basis.radial_table)
    a1 = field.radial_profiles(basis.d1_table)
    a2 = field.radial_profiles(basis.d2_table)
    al = field.radial_profiles(basis.laplace_table)
    m = basis.modes[None, :, None]

    def combine(profiles, cos_table, sin_table):
        return profiles[COS].T @ cos_table + profiles[SIN].T @ sin_table

    def rotate(profiles):
        # d/dtheta maps (cos, sin) coefficients a to (m a_sin, -m a_cos)
        return np.stack([m[0] * profiles[SIN], -m[0] * profiles[COS]])

    cos_t, sin_t = basis.cos_table, basis.sin_table
    return {
        "u": combine(a0, cos_t, sin_t),
        "u_r": combine(a1, cos_t, sin_t),
        "u_rr": combine(a2, cos_t, sin_t),
        "u_t": combine(rotate(a0), cos_t, sin_t),
        "u_tt": combine(-(m ** 2) * a0, cos_t, sin_t),
        "u_rt": combine(rotate(a1), cos_t, sin_t),
        "lap": combine(al, cos_t, sin_t),
    }
