"""
Quadratic forms, eigenvalues and linear solves on the disc basis.

Because every basis member is orthogonal to the others in ||lap .||^2, the
Kirchhoff-Love form with a constant boundary coefficient is a diagonal plus
one rank-one term per (m, parity). Non-constant boundary weights are handled
densely over the live coefficients.
"""

import sys
import os
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exceptions import InvalidInputError, PositivityWindowError, NumericalError
from spectral.basis import COS, SIN
from spectral.field import SpectralField, boundary_coefficients, grid_derivatives

logger = logging.getLogger(__name__)

NEHARI_CHECK_TOL = 1e-10


# -----------------------------------------------------------------------------
# Constant boundary coefficient: diagonal plus rank one
# -----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """
    ||lap u||^2 - alpha * int_{dB_R} u_n^2 ds for a constant alpha.

    Attributes:
        basis (SpectralBasis): Basis of the coefficients.
        alpha (float): Boundary coefficient.
        diagonal (np.ndarray): ||lap phi||^2 in coefficient layout.
        boundary_weight (np.ndarray): alpha R w_m per angular mode, the
            weight of the rank-one term (b . c)^2.
    """

    basis: object
    alpha: float
    diagonal: np.ndarray
    boundary_weight: np.ndarray

    def value(self, coeffs):
        """Form value of a coefficient array or SpectralField."""
        c = coeffs.coeffs if isinstance(coeffs, SpectralField) else coeffs
        traces = np.einsum("pmk,mk->pm", c, self.basis.boundary_traces)
        return float(np.sum(self.diagonal * c ** 2) - np.sum(self.boundary_weight * traces ** 2))

    def apply(self, coeffs):
        """Gradient of the form divided by two, in coefficient layout."""
        b = self.basis.boundary_traces
        traces = np.einsum("pmk,mk->pm", coeffs, b)
        out = self.diagonal * coeffs - (self.boundary_weight * traces)[:, :, None] * b[None]
        out[~self.basis.active] = 0.0
        return out

    def diagonal_entries(self):
        """Diagonal of the full form, the descent preconditioner."""
        out = self.diagonal - self.boundary_weight[None, :, None] * self.basis.boundary_traces[None] ** 2
        return np.where(self.basis.active, out, 1.0)

    def block_margins(self):
        """
        Relative smallest eigenvalue 1 - w_m b^T D^{-1} b of each mode block.

        The block diag(D) - w b b^T is positive definite iff its margin is
        positive; margins above one mean w_m < 0.
        """
        b = self.basis.boundary_traces
        reach = np.sum(b ** 2 / self.diagonal[COS], axis=1)
        return np.minimum(1.0, 1.0 - self.boundary_weight * reach)

    def is_positive_definite(self):
        return bool(np.all(self.block_margins() > 0.0))

    def solve(self, load):
        """
        Solve the form's linear system for a load in coefficient layout.

        Each mode block is inverted by Sherman-Morrison.
        """
        margins = self.block_margins()
        if np.any(margins <= 0.0):
            m = int(np.argmin(margins))
            raise PositivityWindowError(
                f"boundary coefficient {self.alpha:.6g} makes mode {m} indefinite "
                f"(margin {margins[m]:.3e})",
                parameter=self.alpha,
            )
        b = self.basis.boundary_traces[None]
        d_load = load / self.diagonal
        d_b = b / self.diagonal
        w = self.boundary_weight[None, :, None]
        numer = np.sum(b * d_load, axis=2, keepdims=True)
        denom = 1.0 - w * np.sum(b * d_b, axis=2, keepdims=True)
        out = d_load + w * d_b * numer / denom
        out[~self.basis.active] = 0.0
        return out

    def dense(self):
        """Matrix over the packed live coefficients."""
        basis = self.basis
        matrix = np.diag(basis.pack(self.diagonal))
        for parity in (COS, SIN):
            for m in basis.modes:
                if parity == SIN and m == 0:
                    continue
                block = basis.zeros_like()
                block[parity, m] = basis.boundary_traces[m]
                b = basis.pack(block)
                matrix -= self.boundary_weight[m] * np.outer(b, b)
        return matrix


def assemble_boundary_form(basis, alpha):
    """
    Form ||lap u||^2 - alpha int u_n^2 ds for constant alpha.

    Args:
        basis (SpectralBasis): Basis.
        alpha (float): Boundary coefficient.

    Returns:
        QuadraticForm: Diagonal plus rank-one description.
    """
    alpha = float(alpha)
    diagonal = np.where(basis.active, basis.bilaplace[None], 0.0)
    diagonal[~basis.active] = 1.0
    weight = alpha * basis.R * basis.angular_weight
    return QuadraticForm(basis, alpha, diagonal, weight)


def assemble_hsigma_form(basis, sigma):
    """
    The form ||u||^2_{H_sigma} = ||lap u||^2 - (1 - sigma) int kappa u_n^2 ds.

    Args:
        basis (SpectralBasis): Disc basis; kappa = 1/R.
        sigma (float): Boundary parameter, sigma > -1.

    Returns:
        QuadraticForm: Pure diagonal for sigma = 1.
    """
    if not sigma > -1.0:
        raise InvalidInputError(f"sigma > -1 required, got {sigma}")
    return assemble_boundary_form(basis, (1.0 - sigma) / basis.R)


# -----------------------------------------------------------------------------
# Weighted boundary terms
# -----------------------------------------------------------------------------

def trace_matrix(basis, theta):
    """
    Boundary normal derivatives of every live member at the given angles.

    Returns:
        np.ndarray: Shape (basis.size, len(theta)).
    """
    angular = basis.angular_values(theta)
    full = basis.boundary_traces[None, :, :, None] * angular[:, :, None, :]
    return full[basis.active]


def _boundary_samples(basis, weight):
    theta = basis.quad_theta
    if callable(weight):
        values = np.broadcast_to(np.asarray(weight(theta), dtype=float), theta.shape)
    else:
        values = np.full(theta.shape, float(weight))
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("boundary weight must be finite")
    return theta, values


def boundary_matrix(basis, weight):
    """
    Matrix of int_{dB_R} weight u_n^2 ds over the live coefficients.

    Args:
        basis (SpectralBasis): Basis.
        weight (float or callable): Constant or function of the boundary angle.

    Returns:
        np.ndarray: Symmetric matrix of size basis.size.
    """
    theta, values = _boundary_samples(basis, weight)
    traces = trace_matrix(basis, theta)
    return basis.R * basis.angular_step * (traces * values) @ traces.T


@dataclass(frozen=True)
class SteklovSpectrum:
    """
    First weighted Steklov eigenvalues.

    Attributes:
        per_mode (np.ndarray): delta_m for m = 0..M (inf where the weight
            does not see the mode).
        delta (float): Global first eigenvalue delta_1.
        argmin (int): Mode attaining per_mode's minimum.
        mode (int): Requested mode, or None.
    """

    per_mode: np.ndarray
    delta: float
    argmin: int
    mode: int = None

    @property
    def value(self):
        """delta_m for the requested mode, else delta_1."""
        return self.delta if self.mode is None else float(self.per_mode[self.mode])

    def positivity_threshold(self):
        """sigma_* = 1 - delta_1 for the curvature weight."""
        return 1.0 - self.delta


def _largest_ratio(numerator, diagonal):
    scaled = numerator / np.sqrt(np.outer(diagonal, diagonal))
    top = scipy.linalg.eigh(scaled, eigvals_only=True, subset_by_index=[len(diagonal) - 1] * 2)
    return float(top[-1])


def steklov_eigenvalue(basis, beta_weight=None, m=None):
    """
    First eigenvalue of inf ||lap u||^2 / int beta u_n^2 ds.

    Args:
        basis (SpectralBasis): Disc basis.
        beta_weight (float or callable, optional): Boundary weight >= 0;
            defaults to the curvature 1/R.
        m (int, optional): Angular mode of interest.

    Returns:
        SteklovSpectrum: Per-mode values and the global minimum.
    """
    if beta_weight is None:
        beta_weight = 1.0 / basis.R
    theta, values = _boundary_samples(basis, beta_weight)
    if np.any(values < 0.0):
        raise InvalidInputError("Steklov weight must be nonnegative")
    if not np.any(values > 0.0):
        raise InvalidInputError("Steklov weight vanishes on the whole boundary")
    if m is not None and not 0 <= m <= basis.M:
        raise InvalidInputError(f"mode {m} outside 0..{basis.M}")

    diagonal = basis.bilaplace
    per_mode = np.empty(basis.M + 1)
    if not callable(beta_weight):
        beta = float(beta_weight)
        reach = np.sum(basis.boundary_traces ** 2 / diagonal, axis=1)
        per_mode[:] = 1.0 / (beta * basis.R * basis.angular_weight * reach)
        delta = float(np.min(per_mode))
    else:
        full = boundary_matrix(basis, beta_weight)
        packed_diagonal = basis.pack(np.broadcast_to(diagonal, basis.shape))
        modes = basis.pack(np.broadcast_to(basis.modes[None, :, None], basis.shape))
        for mode in basis.modes:
            sel = modes == mode
            top = _largest_ratio(full[np.ix_(sel, sel)], packed_diagonal[sel])
            per_mode[mode] = 1.0 / top if top > 0.0 else np.inf
        top = _largest_ratio(full, packed_diagonal)
        delta = 1.0 / top
    argmin = int(np.argmin(per_mode))
    logger.debug("Steklov delta_1 = %.12g (mode %d of %d)", delta, argmin, basis.M)
    return SteklovSpectrum(per_mode, delta, argmin, m)


@dataclass(frozen=True)
class NormBounds:
    """
    ||u||^2_{H_sigma} with the equivalence bounds in terms of ||lap u||^2.

    Attributes:
        value (float): Form value.
        lower (float): (1 - (1-sigma)^+ / delta_1) ||lap u||^2.
        upper (float): (1 + (1-sigma)^- / delta_1) ||lap u||^2.
        laplace_norm2 (float): ||lap u||^2.
        delta_1 (float): First curvature-weighted Steklov eigenvalue.
    """

    value: float
    lower: float
    upper: float
    laplace_norm2: float
    delta_1: float

    @property
    def holds(self):
        slack = 1e-12 * max(1.0, abs(self.upper))
        return self.lower - slack <= self.value <= self.upper + slack


def norm_equivalence_bounds(field, sigma):
    """
    Two-sided bounds of the H_sigma norm by ||lap u||^2.

    Args:
        field (SpectralField): Field.
        sigma (float): Boundary parameter, sigma > -1.

    Returns:
        NormBounds: Value and bounds.
    """
    basis = field.basis
    form = assemble_hsigma_form(basis, sigma)
    delta_1 = steklov_eigenvalue(basis).delta
    lap2 = float(np.sum(form.diagonal * field.coeffs ** 2))
    lower = (1.0 - max(1.0 - sigma, 0.0) / delta_1) * lap2
    upper = (1.0 + max(sigma - 1.0, 0.0) / delta_1) * lap2
    return NormBounds(form.value(field), lower, upper, lap2, delta_1)


# -----------------------------------------------------------------------------
# Linear solves
# -----------------------------------------------------------------------------

def load_vector(basis, source):
    """
    Integrals of a source against every basis member.

    Args:
        basis (SpectralBasis): Basis.
        source: SpectralField of the same basis, callable f(r, theta), or an
            array of samples on the quadrature grid.

    Returns:
        np.ndarray: Coefficient-shaped load.
    """
    if isinstance(source, SpectralField):
        if source.basis is not basis:
            raise InvalidInputError("source field lives in another basis")
        return source.coeffs * basis.mass[None]
    if callable(source):
        rr, tt = np.meshgrid(basis.quad_r, basis.quad_theta, indexing="ij")
        values = np.broadcast_to(np.asarray(source(rr, tt), dtype=float), rr.shape)
    else:
        values = np.asarray(source, dtype=float)
        if values.shape != (basis.n_radial, basis.n_angular):
            raise InvalidInputError(
                f"sampled source must have the quadrature shape "
                f"{(basis.n_radial, basis.n_angular)}, got {values.shape}"
            )
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("source must be finite")
    return basis.project_grid(values)


def linear_steklov_solve(basis, f, alpha):
    """
    Galerkin solution of lap^2 u = f, u = 0, lap u = alpha u_n on dB_R.

    Args:
        basis (SpectralBasis): Disc basis.
        f: Source, see load_vector.
        alpha (float or callable): Boundary coefficient, constant or a
            function of the boundary angle.

    Returns:
        SpectralField: The solution.
    """
    load = load_vector(basis, f)
    if not callable(alpha):
        form = assemble_boundary_form(basis, alpha)
        return SpectralField(basis, form.solve(load))

    diagonal = basis.pack(np.broadcast_to(basis.bilaplace, basis.shape))
    matrix = np.diag(diagonal) - boundary_matrix(basis, alpha)
    try:
        factor = scipy.linalg.cho_factor(matrix)
    except scipy.linalg.LinAlgError:
        scale = np.sqrt(diagonal)
        lowest = scipy.linalg.eigh(matrix / np.outer(scale, scale), eigvals_only=True,
                                   subset_by_index=[0, 0])[0]
        raise PositivityWindowError(
            f"boundary coefficient makes the form indefinite (relative eigenvalue {lowest:.3e})",
            parameter=alpha,
        ) from None
    return SpectralField.from_vector(basis, scipy.linalg.cho_solve(factor, basis.pack(load)))


def poisson_solve(basis, source):
    """
    Galerkin solution of -lap u = f with u = 0 on dB_R.

    The basis is orthogonal in the Dirichlet energy, so the solve is diagonal.

    Args:
        basis (SpectralBasis): Disc basis.
        source: Source, see load_vector.

    Returns:
        SpectralField: The solution.
    """
    load = load_vector(basis, source)
    coeffs = load / np.where(basis.active, basis.stiffness[None], 1.0)
    coeffs[~basis.active] = 0.0
    return SpectralField(basis, coeffs)


# -----------------------------------------------------------------------------
# Energy
# -----------------------------------------------------------------------------

def nonlinear_integral(field, p):
    """int |u|^{p+1} by tensor quadrature."""
    values = field.on_quadrature()
    return float(np.sum(field.basis.quadrature_weights() * np.abs(values) ** (p + 1.0)))


def energy(field, params):
    """
    J_sigma(u) = 1/2 ||u||^2_{H_sigma} - int |u|^{p+1} / (p+1).

    Args:
        field (SpectralField): Field.
        params (SteklovParams): Problem parameters.

    Returns:
        float: Energy.
    """
    form = assemble_hsigma_form(field.basis, params.sigma)
    return 0.5 * form.value(field) - nonlinear_integral(field, params.p) / (params.p + 1.0)


def nehari_scale(field, params):
    """
    The t* > 0 with t* u on the Nehari manifold, p > 1 only.

    Args:
        field (SpectralField): Nonzero field.
        params (SteklovParams): Problem parameters.

    Returns:
        float: t* = (||u||^2_{H_sigma} / int |u|^{p+1})^{1/(p-1)}.
    """
    if not params.superlinear:
        raise InvalidInputError(f"nehari_scale needs p > 1, got {params.p}")
    if field.is_zero():
        raise InvalidInputError("nehari_scale of the zero field")
    quadratic = assemble_hsigma_form(field.basis, params.sigma).value(field)
    if quadratic <= 0.0:
        raise PositivityWindowError(
            f"H_sigma form value {quadratic:.3e} <= 0 at sigma = {params.sigma}",
            parameter=params.sigma,
        )
    power = nonlinear_integral(field, params.p)
    if power <= 0.0:
        raise InvalidInputError("field vanishes on the quadrature grid")

    t = (quadratic / power) ** (1.0 / (params.p - 1.0))
    slope = t * quadratic - t ** params.p * power
    if abs(slope) > NEHARI_CHECK_TOL * t * quadratic:
        raise NumericalError(f"Nehari scale check failed: dJ(tu)/dt = {slope:.3e} at t = {t:.6g}")
    return t


def nehari_residual(field, params):
    """J'_sigma(u)u = ||u||^2_{H_sigma} - int |u|^{p+1}."""
    quadratic = assemble_hsigma_form(field.basis, params.sigma).value(field)
    return quadratic - nonlinear_integral(field, params.p)


# -----------------------------------------------------------------------------
# Hessian determinant identity
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class HessianIdentity:
    """
    Both sides of int det D^2 u = 1/2 int kappa u_n^2 ds.

    Attributes:
        interior (float): int_{B_R} det D^2 u.
        boundary (float): 1/2 int_{dB_R} kappa u_n^2 ds.
    """

    interior: float
    boundary: float

    @property
    def difference(self):
        return self.interior - self.boundary


def hessian_identity_check(field):
    """
    Evaluate both sides of the Hessian determinant identity on the disc.

    Args:
        field (SpectralField): Field vanishing on the boundary.

    Returns:
        HessianIdentity: Interior and boundary integrals.
    """
    basis = field.basis
    d = grid_derivatives(field)
    r = basis.quad_r[:, None]
    det = d["u_rr"] * (d["u_r"] / r + d["u_tt"] / r ** 2) - (d["u_rt"] / r - d["u_t"] / r ** 2) ** 2
    interior = float(np.sum(basis.quadrature_weights() * det))
    # kappa ds = dtheta on the circle
    traces = boundary_coefficients(field)
    boundary = 0.5 * float(np.sum(basis.angular_weight[None] * traces ** 2))
    return HessianIdentity(interior, boundary)
