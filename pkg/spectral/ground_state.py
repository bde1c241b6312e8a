"""
Ground states by minimization.

For p > 1 the scale-free quotient ||u||^2_{H_sigma} / ||u||^2_{p+1} is
minimized and the minimizer is moved onto the Nehari manifold afterwards;
for 0 < p < 1 the coercive functional J_sigma is minimized directly. Both
run L-BFGS in coordinates preconditioned by the diagonal of the quadratic
form. The descent only talks to an energy problem object, so the limacon
pullback reuses it unchanged.
"""

import sys
import os
import math
import logging
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from scipy.optimize import minimize

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import ASYMMETRIC_SEED_WEIGHT, DESCENT_ROUNDOFF_FACTOR, DESCENT_STALL_RTOL
from exceptions import InvalidInputError, PositivityWindowError
from models.options import DescentOptions
from spectral.basis import COS
from spectral.field import SpectralField, evaluate, radial_fraction
from spectral.forms import assemble_hsigma_form

logger = logging.getLogger(__name__)

MAX_RESTARTS = 5


@dataclass
class GroundStateReport:
    """
    Outcome of a ground-state descent.

    Attributes:
        field (SpectralField): The computed state, with u(0) > 0.
        energy (float): J_sigma of the state.
        nehari_t (float): Final Nehari scale; None for p < 1.
        min_value (float): Min of u over the sample grid.
        max_abs (float): Max of |u| over the sample grid.
        radial_fraction (float): L^2 mass share of the m = 0 modes.
        iterations (int): Accepted descent steps.
        converged (bool): Gradient criterion met.
        nehari_residual (float): J'_sigma(u)u at the state.
        nehari_gap (float): J - (1/2 - 1/(p+1)) int |u|^{p+1}; None for p < 1.
        quadratic (float): ||u||^2_{H_sigma}.
        objective_trace (list): Objective after every accepted step.
    """

    field: SpectralField
    energy: float
    nehari_t: float
    min_value: float
    max_abs: float
    radial_fraction: float
    iterations: int
    converged: bool
    nehari_residual: float
    nehari_gap: float
    quadratic: float
    objective_trace: list = dataclass_field(default_factory=list, repr=False)

    def summary(self):
        return {
            "energy": self.energy,
            "nehari_t": self.nehari_t,
            "min_value": self.min_value,
            "max_abs": self.max_abs,
            "radial_fraction": self.radial_fraction,
            "iterations": self.iterations,
            "converged": self.converged,
            "nehari_residual": self.nehari_residual,
        }


class DiscEnergy:
    """
    Energy pieces of the disc problem on packed coefficient vectors.

    Attributes:
        basis (SpectralBasis): Disc basis.
        form (QuadraticForm): H_sigma form.
    """

    def __init__(self, basis, sigma):
        self.basis = basis
        self.form = assemble_hsigma_form(basis, sigma)
        if not self.form.is_positive_definite():
            raise PositivityWindowError(
                f"H_sigma form indefinite at sigma = {sigma}", parameter=sigma
            )
        self._weights = basis.quadrature_weights()

    @property
    def size(self):
        return self.basis.size

    def preconditioner(self):
        return self.basis.pack(self.form.diagonal_entries())

    def quadratic(self, vector):
        """Form value and gradient."""
        coeffs = self.basis.unpack(vector)
        return self.form.value(coeffs), 2.0 * self.basis.pack(self.form.apply(coeffs))

    def power(self, vector, p):
        """int |u|^{p+1} and the gradient of int |u|^{p+1} / (p+1)."""
        basis = self.basis
        values = SpectralField(basis, basis.unpack(vector)).on_quadrature()
        magnitude = np.abs(values)
        total = float(np.sum(self._weights * magnitude ** (p + 1.0)))
        gradient = basis.pack(basis.project_grid(np.sign(values) * magnitude ** p))
        return total, gradient

    def to_field(self, vector):
        return SpectralField.from_vector(self.basis, vector)

    def radial_index(self):
        """Packed position of the lowest radial member."""
        marker = self.basis.zeros_like()
        marker[COS, 0, 0] = 1.0
        return int(np.argmax(self.basis.pack(marker)))

    def nonradial_mask(self):
        modes = np.broadcast_to(self.basis.modes[None, :, None], self.basis.shape)
        return self.basis.pack(modes) > 0

    def sample_values(self, field):
        return field.on_quadrature()

    def center_value(self, field):
        return float(evaluate(field, 0.0, 0.0))


@dataclass
class DescentResult:
    vector: np.ndarray
    iterations: int
    converged: bool
    gradient_norm: float
    trace: list
    message: str
    stalled: bool = False


class NehariDescent:
    """
    Preconditioned L-BFGS descent for ground states.

    Attributes:
        problem: Energy problem (see DiscEnergy).
        p (float): Exponent.
        options (DescentOptions): Stopping rule and seed.
    """

    def __init__(self, problem, p, options=None):
        self.problem = problem
        self.p = float(p)
        self.options = (options or DescentOptions()).validate()
        self.scale = np.sqrt(self.problem.preconditioner())
        self._objective_scale = 1.0

    # -------------------------------------------------------------------------
    # Objectives in preconditioned coordinates y = sqrt(P) c
    # -------------------------------------------------------------------------

    def _raw(self, vector):
        p = self.p
        quadratic, d_quadratic = self.problem.quadratic(vector)
        power, g = self.problem.power(vector, p)
        if p > 1.0:
            if power <= 0.0:
                return np.inf, np.zeros_like(vector)
            norm = power ** (2.0 / (p + 1.0))
            value = quadratic / norm
            gradient = (d_quadratic - 2.0 * value * power ** ((1.0 - p) / (p + 1.0)) * g) / norm
        else:
            value = 0.5 * quadratic - power / (p + 1.0)
            gradient = 0.5 * d_quadratic - g
        return value, gradient

    def objective(self, y):
        value, gradient = self._raw(y / self.scale)
        return value / self._objective_scale, gradient / self.scale / self._objective_scale

    def ray_scale(self, vector):
        """Minimizer of J along the ray through vector."""
        quadratic, _ = self.problem.quadratic(vector)
        power, _ = self.problem.power(vector, self.p)
        return (quadratic / power) ** (1.0 / (self.p - 1.0))

    # -------------------------------------------------------------------------
    # Descent
    # -------------------------------------------------------------------------

    def initial_vector(self):
        """
        Seeded start: the lowest radial member plus noise, or a deliberately
        non-radial mix when options.asymmetric is set.
        """
        rng = np.random.default_rng(self.options.seed)
        n = self.problem.size
        noise = rng.standard_normal(n)
        noise /= np.linalg.norm(noise)
        base = np.zeros(n)
        base[self.problem.radial_index()] = 1.0
        nonradial = self.problem.nonradial_mask()
        if self.options.asymmetric and nonradial.any():
            outer = np.where(nonradial, noise, 0.0)
            inner = base + 0.1 * np.where(nonradial, 0.0, noise)
            y = (np.sqrt(1.0 - ASYMMETRIC_SEED_WEIGHT) * inner / np.linalg.norm(inner)
                 + np.sqrt(ASYMMETRIC_SEED_WEIGHT) * outer / np.linalg.norm(outer))
        else:
            y = base + 0.1 * noise
            y /= np.linalg.norm(y)
        vector = y / self.scale
        if self.p < 1.0:
            vector = vector * self.ray_scale(vector)
        return vector

    def _converged(self, gradient_norm, stalled):
        """gtol met, or a stalled restart within a round-off multiple of it."""
        gtol = self.options.gtol
        return gradient_norm <= gtol or (stalled and gradient_norm <= DESCENT_ROUNDOFF_FACTOR * gtol)

    def run(self, vector=None):
        """
        Minimize from vector (or the seeded start).

        L-BFGS-B stops with an abnormal line search once the gradient sits
        at round-off level. Each restart starts with fresh memory and the
        objective rescaled by its current value; a restart that no longer
        moves the objective ends the descent, and counts as converged when
        the gradient is within DESCENT_ROUNDOFF_FACTOR of gtol.

        Returns:
            DescentResult: Final coefficients and bookkeeping.
        """
        options = self.options
        vector = self.initial_vector() if vector is None else np.asarray(vector, dtype=float)
        y = vector * self.scale
        start, _ = self._raw(vector)

        trace = [start]
        iterations = 0
        message = ""
        gradient_norm = np.inf
        stalled = False
        current = start

        def record(xk):
            trace.append(self._raw(xk / self.scale)[0])

        for attempt in range(MAX_RESTARTS + 1):
            budget = options.max_iter - iterations
            if budget <= 0:
                break
            self._objective_scale = max(abs(current), np.finfo(float).tiny)
            result = minimize(
                self.objective, y, jac=True, method="L-BFGS-B", callback=record,
                options={
                    "maxiter": budget,
                    "maxcor": options.memory,
                    "gtol": options.gtol,
                    "ftol": options.ftol,
                },
            )
            iterations += int(result.nit)
            y = result.x
            message = str(result.message)
            gradient_norm = float(np.max(np.abs(result.jac)))
            value = self._raw(y / self.scale)[0]
            stalled = attempt > 0 and abs(current - value) <= DESCENT_STALL_RTOL * max(abs(current), 1.0)
            current = value
            if self._converged(gradient_norm, stalled) or stalled:
                break
            logger.debug("descent restart %d: |g| = %.3e (%s)", attempt + 1, gradient_norm, message)

        converged = self._converged(gradient_norm, stalled)
        if not converged:
            logger.warning(
                "descent stopped after %d steps with |g| = %.3e: %s", iterations, gradient_norm, message
            )
        elif gradient_norm > options.gtol:
            logger.debug("descent stalled at round-off: |g| = %.3e after %d steps", gradient_norm, iterations)
        return DescentResult(y / self.scale, iterations, converged, gradient_norm, trace, message, stalled)


def build_report(problem, params, descent):
    """
    Finish a descent: fix the sign, move onto the Nehari manifold and
    collect diagnostics.

    Args:
        problem: Energy problem the descent ran on.
        params (SteklovParams): Problem parameters.
        descent (DescentResult): Raw descent outcome.

    Returns:
        GroundStateReport: The report.
    """
    p = params.p
    vector = descent.vector
    if problem.center_value(problem.to_field(vector)) < 0.0:
        vector = -vector

    nehari_t = None
    if p > 1.0:
        quadratic, _ = problem.quadratic(vector)
        power, _ = problem.power(vector, p)
        nehari_t = (quadratic / power) ** (1.0 / (p - 1.0))
        vector = nehari_t * vector

    field = problem.to_field(vector)
    quadratic, _ = problem.quadratic(vector)
    power, _ = problem.power(vector, p)
    energy_value = 0.5 * quadratic - power / (p + 1.0)
    samples = problem.sample_values(field)
    gap = None
    if p > 1.0:
        gap = energy_value - (0.5 - 1.0 / (p + 1.0)) * power

    return GroundStateReport(
        field=field,
        energy=energy_value,
        nehari_t=nehari_t,
        min_value=float(np.min(samples)),
        max_abs=float(np.max(np.abs(samples))),
        radial_fraction=radial_fraction(field),
        iterations=descent.iterations,
        converged=descent.converged,
        nehari_residual=quadratic - power,
        nehari_gap=gap,
        quadratic=quadratic,
        objective_trace=descent.trace,
    )


def ground_state(params, basis, options=None):
    """
    Least-energy solution on the disc.

    Args:
        params (SteklovParams): Problem parameters; params.R must match the
            basis radius.
        basis (SpectralBasis): Truncation.
        options (DescentOptions, optional): Descent controls.

    Returns:
        GroundStateReport: Converged or not; non-convergence is reported,
            not raised.
    """
    if not math.isclose(params.R, basis.R):
        raise InvalidInputError(f"params.R = {params.R} does not match the basis radius {basis.R}")
    problem = DiscEnergy(basis, params.sigma)
    descent = NehariDescent(problem, params.p, options).run()
    report = build_report(problem, params, descent)
    logger.info(
        "ground state p=%g sigma=%g: J=%.10g, radial=%.9f, %d steps%s",
        params.p, params.sigma, report.energy, report.radial_fraction, report.iterations,
        "" if report.converged else " (not converged)",
    )
    return report
