"""
Conformal pullback of the plate functional from a limacon to the unit disc.

With u~ = u o h and h(z) = a + z + a z^2:

    int_Omega (lap u)^2       = int_D |h'|^{-2} (lap u~)^2
    int_Omega |u|^{p+1}       = int_D |h'|^2 |u~|^{p+1}
    int_dOmega kappa u_n^2 ds = int_0^{2 pi} kappa |h'|^{-1} (d_r u~)^2 dtheta

Every weight is even in theta, so cos and sin members never couple and
the coupling of modes m, m' only needs the cosine coefficients of the
weight at |m - m'| and m + m'.
"""

import sys
import os
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import LIMACON_A_BAR
from exceptions import InvalidInputError, NumericalError, PositivityWindowError, RangeError
from geometry.limacon import LimaconDomain, curvature
from spectral.basis import COS, SIN
from spectral.field import SpectralField, evaluate
from spectral.ground_state import NehariDescent, build_report

logger = logging.getLogger(__name__)


def _check_basis(basis):
    if basis.R != 1.0:
        raise InvalidInputError(f"pullback needs the unit-disc basis, got R = {basis.R}")


def _cosine_coefficients(samples, step, orders):
    """int_0^{2 pi} w(theta) cos(n theta) dtheta for every n in orders, per row."""
    theta = np.arange(samples.shape[-1]) * step
    return step * samples @ np.cos(np.outer(theta, orders))


def _coupling(basis, coefficients):
    """
    Angular integrals of w T_{par,m} T_{par,m'} for both parities.

    Args:
        coefficients (np.ndarray): Cosine coefficients, shape (..., 2M+1).

    Returns:
        np.ndarray: Shape (2, ..., M+1, M+1).
    """
    m = basis.modes
    diff = np.abs(m[:, None] - m[None, :])
    total = m[:, None] + m[None, :]
    low = coefficients[..., diff]
    high = coefficients[..., total]
    return np.stack([0.5 * (low + high), 0.5 * (low - high)])


def _assemble(basis, radial_left, radial_right, radial_weights, coupling):
    """
    Dense matrix over the packed live coefficients.

    Args:
        radial_left, radial_right (np.ndarray): Radial tables (M+1, K+1, n).
        radial_weights (np.ndarray): Weights per radial node, shape (n,).
        coupling (np.ndarray): (2, n, M+1, M+1) angular couplings.
    """
    K1 = basis.K + 1
    M1 = basis.M + 1
    full = np.zeros((2, M1, K1, 2, M1, K1))
    for parity in (COS, SIN):
        weighted = coupling[parity] * radial_weights[:, None, None]
        blocks = np.einsum("mki,imn,nli->mknl", radial_left, weighted, radial_right, optimize=True)
        full[parity, :, :, parity, :, :] = blocks
    size = 2 * M1 * K1
    matrix = full.reshape(size, size)
    active = basis.active.ravel()
    return matrix[np.ix_(active, active)]


def _boundary_assemble(basis, weight_samples):
    """Matrix of int w(theta) (d_r u~)^2 dtheta at r = 1."""
    orders = np.arange(2 * basis.M + 1)
    coefficients = _cosine_coefficients(weight_samples, basis.angular_step, orders)
    coupling = _coupling(basis, coefficients[None])
    b = basis.boundary_traces[:, :, None]
    return _assemble(basis, b, b, np.ones(1), coupling)


@dataclass(frozen=True, eq=False)
class PullbackForms:
    """
    Pulled-back matrices over the packed live coefficients.

    Attributes:
        domain (LimaconDomain): Domain.
        basis (SpectralBasis): Unit-disc basis.
        laplace (np.ndarray): int_Omega (lap u)^2.
        boundary (np.ndarray): int_dOmega kappa u_n^2 ds.
        boundary_abs (np.ndarray): Same with |kappa|.
        boundary_minus (np.ndarray): Same with kappa^- = max(-kappa, 0).
        area_weight (np.ndarray): |h'|^2 on the quadrature grid.
    """

    domain: LimaconDomain
    basis: object
    laplace: np.ndarray
    boundary: np.ndarray
    boundary_abs: np.ndarray
    boundary_minus: np.ndarray
    area_weight: np.ndarray

    def hsigma(self, sigma):
        return self.laplace - (1.0 - sigma) * self.boundary


@lru_cache(maxsize=8)
def pullback_forms(domain, basis):
    """
    Assemble the pulled-back forms of a limacon in a unit-disc basis.

    Args:
        domain (LimaconDomain): Domain.
        basis (SpectralBasis): Basis with R = 1.

    Returns:
        PullbackForms: Dense matrices, cached per (domain, basis).
    """
    _check_basis(basis)
    a = domain.a
    r = basis.quad_r[:, None]
    theta = basis.quad_theta[None, :]
    jacobian = 1.0 + 4.0 * a * r * np.cos(theta) + 4.0 * a ** 2 * r ** 2

    orders = np.arange(2 * basis.M + 1)
    coefficients = _cosine_coefficients(1.0 / jacobian, basis.angular_step, orders)
    coupling = _coupling(basis, coefficients)
    laplace = _assemble(basis, basis.laplace_table, basis.laplace_table, basis.radial_weights, coupling)

    phi = basis.quad_theta
    kappa = curvature(domain, phi)
    speed = np.sqrt(1.0 + 4.0 * a * np.cos(phi) + 4.0 * a ** 2)
    boundary = _boundary_assemble(basis, kappa / speed)
    boundary_abs = _boundary_assemble(basis, np.abs(kappa) / speed)
    boundary_minus = _boundary_assemble(basis, np.maximum(-kappa, 0.0) / speed)
    logger.debug("pullback forms assembled for a = %g (%d unknowns)", a, basis.size)
    return PullbackForms(domain, basis, laplace, boundary, boundary_abs, boundary_minus, jacobian)


# -----------------------------------------------------------------------------
# Energy
# -----------------------------------------------------------------------------

class PullbackEnergy:
    """
    Energy pieces on a limacon, in the interface NehariDescent expects.

    Attributes:
        forms (PullbackForms): Assembled matrices.
        matrix (np.ndarray): H_sigma form.
    """

    def __init__(self, domain, basis, sigma):
        self.forms = pullback_forms(domain, basis)
        self.basis = basis
        self.sigma = sigma
        self.matrix = self.forms.hsigma(sigma)
        try:
            scipy.linalg.cholesky(self.matrix)
        except scipy.linalg.LinAlgError:
            raise PositivityWindowError(
                f"pulled-back H_sigma form indefinite at sigma = {sigma}, a = {domain.a}",
                parameter=sigma,
            ) from None
        self._weights = basis.quadrature_weights() * self.forms.area_weight

    @property
    def size(self):
        return self.basis.size

    def preconditioner(self):
        return np.diag(self.matrix).copy()

    def quadratic(self, vector):
        image = self.matrix @ vector
        return float(vector @ image), 2.0 * image

    def power(self, vector, p):
        basis = self.basis
        values = SpectralField(basis, basis.unpack(vector)).on_quadrature()
        magnitude = np.abs(values)
        total = float(np.sum(self._weights * magnitude ** (p + 1.0)))
        source = self.forms.area_weight * np.sign(values) * magnitude ** p
        return total, basis.pack(basis.project_grid(source))

    def to_field(self, vector):
        return SpectralField.from_vector(self.basis, vector)

    def radial_index(self):
        marker = self.basis.zeros_like()
        marker[COS, 0, 0] = 1.0
        return int(np.argmax(self.basis.pack(marker)))

    def nonradial_mask(self):
        modes = np.broadcast_to(self.basis.modes[None, :, None], self.basis.shape)
        return self.basis.pack(modes) > 0

    def sample_values(self, field):
        # quadrature nodes z map to the dense sample h(z) of Omega_a
        return field.on_quadrature()

    def center_value(self, field):
        return float(evaluate(field, 0.0, 0.0))


def pullback_energy(field, domain, params):
    """
    J_sigma on Omega_a of the function whose pullback is field.

    Args:
        field (SpectralField): u o h on the unit disc.
        domain (LimaconDomain): Domain.
        params (SteklovParams): Problem parameters.

    Returns:
        float: J_sigma.
    """
    forms = pullback_forms(domain, field.basis)
    vector = field.vector
    quadratic = float(vector @ forms.hsigma(params.sigma) @ vector)
    values = field.on_quadrature()
    weights = field.basis.quadrature_weights() * forms.area_weight
    power = float(np.sum(weights * np.abs(values) ** (params.p + 1.0)))
    return 0.5 * quadratic - power / (params.p + 1.0)


# -----------------------------------------------------------------------------
# Threshold and ground states
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdReport:
    """
    Positivity threshold of a limacon.

    Attributes:
        nu_star (float): 1 - delta_{1,|kappa|}.
        delta_abs (float): First Steklov eigenvalue with weight |kappa|.
        delta_minus (float): First Steklov eigenvalue with weight kappa^-;
            inf on convex domains.
        min_form_eigenvalue (float): Smallest relative eigenvalue of the
            Laplace form, a conditioning diagnostic.
    """

    nu_star: float
    delta_abs: float
    delta_minus: float
    min_form_eigenvalue: float


def _first_eigenvalue(weight_matrix, laplace, label):
    try:
        top = scipy.linalg.eigh(weight_matrix, laplace, eigvals_only=True,
                                subset_by_index=[len(laplace) - 1] * 2)
    except scipy.linalg.LinAlgError as error:
        raise NumericalError(
            f"generalized eigen-solve for the {label} weight failed: {error}",
            condition=float(np.linalg.cond(laplace)),
        ) from None
    top = float(top[-1])
    return 1.0 / top if top > 0.0 else np.inf


def steklov_threshold(domain, basis):
    """
    nu_* = 1 - delta_{1,|kappa|} from the pulled-back generalized eigenproblem.

    Args:
        domain (LimaconDomain): Domain.
        basis (SpectralBasis): Unit-disc basis.

    Returns:
        ThresholdReport: nu_* with the |kappa| and kappa^- eigenvalues.
    """
    forms = pullback_forms(domain, basis)
    scale = np.sqrt(np.diag(forms.laplace))
    lowest = scipy.linalg.eigh(forms.laplace / np.outer(scale, scale), eigvals_only=True,
                               subset_by_index=[0, 0])[0]
    delta_abs = _first_eigenvalue(forms.boundary_abs, forms.laplace, "|kappa|")
    if np.any(forms.boundary_minus):
        delta_minus = _first_eigenvalue(forms.boundary_minus, forms.laplace, "kappa^-")
    else:
        delta_minus = np.inf
    report = ThresholdReport(1.0 - delta_abs, delta_abs, delta_minus, float(lowest))
    logger.info("limacon a=%g: nu_* = %.10g, delta_kappa- = %.6g", domain.a, report.nu_star, delta_minus)
    return report


def limacon_ground_state(domain, params, basis, options=None, a_bar=LIMACON_A_BAR):
    """
    Ground state on Omega_a through the pullback, with the disc descent.

    Args:
        domain (LimaconDomain): Domain with a <= a_bar.
        params (SteklovParams): Problem parameters.
        basis (SpectralBasis): Unit-disc basis.
        options (DescentOptions, optional): Descent controls.
        a_bar (float): Largest admitted shape parameter.

    Returns:
        GroundStateReport: The state as a field on the unit disc.
    """
    if domain.a > a_bar:
        raise RangeError(f"limacon parameter {domain.a} exceeds the admitted bound {a_bar}")
    threshold = steklov_threshold(domain, basis)
    if params.sigma <= threshold.nu_star:
        raise PositivityWindowError(
            f"sigma = {params.sigma} <= nu_* = {threshold.nu_star:.6g} for a = {domain.a}",
            parameter=params.sigma,
        )
    problem = PullbackEnergy(domain, basis, params.sigma)
    descent = NehariDescent(problem, params.p, options).run()
    report = build_report(problem, params, descent)
    logger.info(
        "limacon ground state a=%g p=%g sigma=%g: J=%.10g, min=%.3e, radial=%.6f",
        domain.a, params.p, params.sigma, report.energy, report.min_value, report.radial_fraction,
    )
    return report
