"""
Radial shooting for the semilinear Steklov problem.

This module integrates the radial ODE lap^2 u = |u|^{p-1}u from the origin,
locates the first zero of u, and solves the Steklov condition
lap u - (1 - sigma) kappa u' = 0 at that zero by root-finding on
beta = lap u(0) with u(0) = 1. Solutions on other radii follow from the
scaling u_R(r) = lambda^{4/(p-1)} u(lambda r), lambda = r0 / R.
"""

import sys
import os
import math
import logging
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import BRENT_XTOL, BRENT_MAXITER, DEFICIENCY_NODES
from exceptions import (
    InvalidInputError, DivergenceError, NoZeroError, NoSolutionError, NoDataError,
)
from models.options import IntegratorOptions, ShootingOptions
from models.params import SteklovParams
from models.radial import RadialGrid, RadialProfile
from models.shooting import ShootingState, ShootingResult, ResidualScan, DeficiencyProfile

logger = logging.getLogger(__name__)

ZERO = "zero"
ESCAPE = "escape"
R_MAX_REACHED = "r_max"

_BLOWUP = 1e150


def _power(u, p):
    return math.copysign(abs(u) ** p, u)


def series_state(p, alpha, beta, r):
    """
    Taylor data of the regular solution near the origin.

    u = alpha + beta r^2/4 + f r^4/64 and v = beta + f r^2/4 with
    f = |alpha|^{p-1} alpha, together with their radial derivatives.

    Args:
        p (float): Exponent.
        alpha (float): u(0).
        beta (float): lap u(0).
        r (float or array): Radii.

    Returns:
        tuple: (u, du, v, dv) at r.
    """
    r = np.asarray(r, dtype=float)
    f = _power(alpha, p)
    u = alpha + beta * r ** 2 / 4.0 + f * r ** 4 / 64.0
    du = beta * r / 2.0 + f * r ** 3 / 16.0
    v = beta + f * r ** 2 / 4.0
    dv = f * r / 2.0
    return u, du, v, dv


class RadialTrajectory:
    """
    Dense solution of the radial initial value problem.

    The trajectory stops at the first zero of u (status "zero"), when u'
    and lap u are both positive so u can never return (status "escape"), or
    at r_max. Below the series-start radius the Taylor data are used.

    Attributes:
        p (float): Exponent.
        alpha (float): u(0).
        beta (float): lap u(0).
        options (IntegratorOptions): Integrator controls.
        status (str): "zero", "escape" or "r_max".
        r_end (float): Last radius reached.
        r0 (float): First zero, or None.
    """

    def __init__(self, p, alpha, beta, options, status, r_end, end_state, solution=None):
        self.p = p
        self.alpha = alpha
        self.beta = beta
        self.options = options
        self.status = status
        self.r_end = r_end
        self.end_state = end_state
        self.solution = solution
        self.r0 = r_end if status == ZERO else None

    @property
    def has_zero(self):
        return self.status == ZERO

    def state_at(self, r):
        """
        Evaluate (u, du, v, dv) at radii inside [0, r_end].

        Args:
            r (float or array): Radii.

        Returns:
            tuple: Four arrays shaped like r.
        """
        r = np.asarray(r, dtype=float)
        if np.any(r < 0.0) or np.any(r > self.r_end * (1.0 + 1e-12)):
            raise InvalidInputError(f"radius outside [0, {self.r_end}]")
        flat = np.atleast_1d(r).ravel()
        out = np.empty((4, flat.size))
        inner = flat <= self.options.eps
        out[:, inner] = np.vstack(series_state(self.p, self.alpha, self.beta, flat[inner]))
        if np.any(~inner):
            if self.solution is None:
                raise InvalidInputError("trajectory stopped at the series start radius")
            out[:, ~inner] = self.solution(np.minimum(flat[~inner], self.r_end))
        return tuple(values.reshape(r.shape) for values in out)

    def final_state(self):
        """The state where integration stopped, as a ShootingState."""
        u, du, v, dv = self.end_state
        return ShootingState(self.r_end, u, du, v, dv)


def integrate_ivp(p, alpha, beta, options=None):
    """
    Integrate u'' = v - u'/r, v'' = |u|^{p-1}u - v'/r outward from the origin.

    Args:
        p (float): Exponent, p > 0 and p != 1.
        alpha (float): u(0) > 0.
        beta (float): lap u(0).
        options (IntegratorOptions, optional): Integrator controls.

    Returns:
        RadialTrajectory: Dense trajectory up to the first zero, an escape, or r_max.
    """
    options = (options or IntegratorOptions()).validate()
    if not alpha > 0.0:
        raise InvalidInputError(f"alpha = u(0) must be positive, got {alpha}")
    if not p > 0.0 or p == 1.0:
        raise InvalidInputError(f"exponent must satisfy p > 0, p != 1, got {p}")

    eps = options.eps
    y0 = np.array(series_state(p, alpha, beta, eps), dtype=float)

    # u' > 0 and v > 0 together are invariant, so u never returns to zero
    if y0[1] > 0.0 and y0[2] > 0.0:
        return RadialTrajectory(p, alpha, beta, options, ESCAPE, eps, tuple(y0))

    def rhs(r, y):
        u, du, v, dv = y
        return [du, v - du / r, dv, _power(u, p) - dv / r]

    def first_zero(r, y):
        return y[0]
    first_zero.terminal = True
    first_zero.direction = -1

    def escape(r, y):
        return min(y[1], y[2])
    escape.terminal = True
    escape.direction = 1

    def blowup(r, y):
        return _BLOWUP - abs(y[0])
    blowup.terminal = True

    sol = solve_ivp(
        rhs, (eps, options.r_max), y0,
        method=options.method, rtol=options.rtol, atol=options.atol,
        events=(first_zero, escape, blowup), dense_output=True,
    )
    finite = np.all(np.isfinite(sol.y), axis=0)
    if sol.status < 0 or not np.all(finite):
        last = sol.t[finite][-1] if np.any(finite) else eps
        raise DivergenceError(f"radial IVP failed for beta = {beta!r}: {sol.message}", last)

    if sol.t_events[0].size:
        status, r_end, end = ZERO, float(sol.t_events[0][0]), sol.y_events[0][0]
    elif sol.t_events[1].size:
        status, r_end, end = ESCAPE, float(sol.t_events[1][0]), sol.y_events[1][0]
    elif sol.t_events[2].size:
        raise DivergenceError(f"radial IVP blew up for beta = {beta!r}", float(sol.t_events[2][0]))
    else:
        status, r_end, end = R_MAX_REACHED, float(sol.t[-1]), sol.y[:, -1]
    return RadialTrajectory(p, alpha, beta, options, status, r_end, tuple(end), sol.sol)


@lru_cache(maxsize=16384)
def _zero_data(p, beta, options):
    """(r0, u'(r0), v(r0)) of the normalized trajectory, or None without a zero."""
    trajectory = integrate_ivp(p, 1.0, beta, options)
    if not trajectory.has_zero:
        return None
    _, du, v, _ = trajectory.end_state
    return trajectory.r0, float(du), float(v)


def _residual_from(data, sigma):
    r0, du, v = data
    return v - (1.0 - sigma) * du / r0


def steklov_residual(p, sigma, beta, options=None):
    """
    Steklov residual Q(beta) = lap u(r0) - (1 - sigma)(1/r0) u'(r0).

    The normalized profile (u(0) = 1) lives on the ball of radius r0, whose
    curvature is 1/r0.

    Args:
        p (float): Exponent.
        sigma (float): Boundary parameter.
        beta (float): lap u(0).
        options (IntegratorOptions, optional): Integrator controls.

    Returns:
        tuple: (Q, RadialTrajectory).
    """
    trajectory = integrate_ivp(p, 1.0, beta, options)
    if not trajectory.has_zero:
        raise NoZeroError(
            f"no first zero up to r = {trajectory.r_end:.4g} for beta = {beta!r} "
            f"({trajectory.status})",
            beta,
        )
    _, du, v, _ = trajectory.end_state
    return float(v - (1.0 - sigma) * du / trajectory.r0), trajectory


def beta_ladder(options=None):
    """The default log-spaced scan of negative betas, increasing."""
    options = options or ShootingOptions()
    return -np.geomspace(-options.beta_lo, -options.beta_hi, options.scan_points)


def _shootable(p, beta, integrator):
    return _zero_data(p, float(beta), integrator) is not None


def _edge_samples(p, betas, valid, options):
    """
    Betas approaching the shootable edge from the valid side.

    The edge beta_c separates trajectories with a first zero from escaping
    ones. For large sigma the residual changes sign only in a thin layer next
    to it, so the layer is sampled geometrically after locating beta_c.
    """
    if not np.any(valid):
        return np.empty(0)
    last = int(np.flatnonzero(valid)[-1])
    lo = float(betas[last])
    hi = float(betas[last + 1]) if last + 1 < betas.size else 0.0
    if last + 1 < betas.size and valid[last + 1:].any():
        logger.debug("shootable set is not an interval above beta = %.6g", lo)

    for _ in range(options.edge_bisections):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _shootable(p, mid, options.integrator):
            lo = mid
        else:
            hi = mid
    edge = lo
    floor = float(betas[last])
    samples = [edge - abs(edge) * 10.0 ** (-k) for k in range(1, options.edge_sample_decades + 1)]
    samples = [b for b in samples + [edge] if floor < b < hi]
    logger.debug("shootable edge for p = %g near beta = %.15g", p, edge)
    return np.array(sorted(set(samples)))


def scan_residuals(p, sigma, betas, options=None, refine_edge=True):
    """
    Tabulate Q over increasing betas and locate its sign changes.

    Args:
        p (float): Exponent.
        sigma (float): Boundary parameter.
        betas (array): Strictly increasing negative betas.
        options (ShootingOptions, optional): Scan controls.
        refine_edge (bool): Add samples next to the shootable edge.

    Returns:
        ResidualScan: The table, sign-change index pairs and skipped betas.
    """
    options = (options or ShootingOptions()).validate()
    betas = np.asarray(betas, dtype=float)
    if betas.ndim != 1 or betas.size == 0:
        raise InvalidInputError("beta grid must be a non-empty 1-D array")
    if np.any(np.diff(betas) <= 0.0) or np.any(betas >= 0.0):
        raise InvalidInputError("beta grid must be strictly increasing and negative")

    data = [_zero_data(p, float(b), options.integrator) for b in betas]
    valid = np.array([d is not None for d in data])
    if refine_edge:
        extra = _edge_samples(p, betas, valid, options)
        if extra.size:
            data += [_zero_data(p, float(b), options.integrator) for b in extra]
            betas = np.concatenate((betas, extra))
            order = np.argsort(betas, kind="stable")
            betas = betas[order]
            data = [data[k] for k in order]
            valid = np.array([d is not None for d in data])

    residuals = np.array([_residual_from(d, sigma) if d is not None else np.nan for d in data])
    index = np.flatnonzero(valid)
    changes = []
    for i, j in zip(index[:-1], index[1:]):
        if residuals[i] == 0.0:
            changes.append((int(i), int(i)))
        elif residuals[i] * residuals[j] < 0.0:
            changes.append((int(i), int(j)))
    if index.size and residuals[index[-1]] == 0.0:
        changes.append((int(index[-1]), int(index[-1])))

    skipped = betas[~valid]
    if skipped.size:
        logger.debug("%d of %d betas have no first zero", skipped.size, betas.size)
    return ResidualScan(betas, residuals, changes, skipped)


def count_roots(params, beta_grid, options=None):
    """
    Count sign changes of Q over a beta grid.

    Args:
        params (SteklovParams): Problem parameters (p and sigma are used).
        beta_grid (array): Strictly increasing negative betas.
        options (ShootingOptions, optional): Scan controls.

    Returns:
        int: Number of sign changes between consecutive valid points.
    """
    scan = scan_residuals(params.p, params.sigma, beta_grid, options)
    if np.all(np.isnan(scan.residuals)):
        raise NoDataError("no beta in the grid yields a first zero")
    if scan.skipped.size:
        logger.info("count_roots skipped %d betas without a first zero", scan.skipped.size)
    return scan.root_count


def _rescaled_profile(trajectory, params, nodes):
    """Sample u_R(r) = c u(lambda r) and its derivatives on [0, R]."""
    lam = trajectory.r0 / params.R
    c = lam ** (4.0 / (params.p - 1.0))
    grid = RadialGrid.uniform(params.R, nodes)
    u, du, v, dv = trajectory.state_at(np.minimum(lam * grid.nodes, trajectory.r0))
    return RadialProfile(grid, c * u, c * lam * du, c * lam ** 2 * v, c * lam ** 3 * dv)


def solve_radial(params, options=None):
    """
    Positive radial solution of the Steklov problem on the disc of radius R.

    Args:
        params (SteklovParams): Problem parameters.
        options (ShootingOptions, optional): Scan and root controls.

    Returns:
        ShootingResult: Root, rescale factor and the rescaled profile. A root
            whose |Q| exceeds options.residual_tol is returned with
            converged = False.
    """
    options = (options or ShootingOptions()).validate()
    if not params.sigma > -1.0:
        raise InvalidInputError("no positive solutions for sigma <= -1")
    p, sigma = params.p, params.sigma

    scan = scan_residuals(p, sigma, beta_ladder(options), options)
    if not scan.sign_changes:
        raise NoSolutionError(
            f"no sign change of Q for p = {p}, sigma = {sigma}", scan.table()
        )
    if scan.root_count > 1:
        logger.warning("Q changes sign %d times for p = %g, sigma = %g; using the first",
                       scan.root_count, p, sigma)

    i, j = scan.sign_changes[0]
    if i == j:
        beta_star = float(scan.betas[i])
    else:
        def residual(beta):
            data = _zero_data(p, float(beta), options.integrator)
            if data is None:
                raise NoSolutionError(f"bracket left the shootable set at beta = {beta!r}",
                                      scan.table())
            return _residual_from(data, sigma)

        beta_star = brentq(residual, scan.betas[i], scan.betas[j],
                           xtol=BRENT_XTOL, maxiter=BRENT_MAXITER)

    q, trajectory = steklov_residual(p, sigma, beta_star, options.integrator)
    converged = bool(abs(q) <= options.residual_tol)
    if not converged:
        logger.warning("residual %.3e above tolerance %.1e for p = %g, sigma = %g",
                       abs(q), options.residual_tol, p, sigma)
    logger.info("p = %g, sigma = %g: beta* = %.12g, r0 = %.12g, |Q| = %.2e",
                p, sigma, beta_star, trajectory.r0, abs(q))

    profile = _rescaled_profile(trajectory, params, options.profile_nodes)
    return ShootingResult(
        params=params,
        beta_star=float(beta_star),
        r0=trajectory.r0,
        lam=trajectory.r0 / params.R,
        profile=profile,
        residual=abs(q),
        root_count=scan.root_count,
        scan=scan,
        trajectory=trajectory,
        converged=converged,
    )


def rescale(result, R, nodes=None):
    """
    Move a solution to another radius without re-solving.

    Args:
        result (ShootingResult): Converged solution.
        R (float): New radius.
        nodes (int, optional): Profile samples, defaults to the current count.

    Returns:
        ShootingResult: The solution on the disc of radius R.
    """
    params = result.params.with_radius(R)
    nodes = nodes or len(result.profile.grid)
    profile = _rescaled_profile(result.trajectory, params, nodes)
    return ShootingResult(params, result.beta_star, result.r0, result.r0 / R, profile,
                          result.residual, result.root_count, result.scan, result.trajectory,
                          result.converged)


def deficiency_profile(result, sigma=None, nodes=DEFICIENCY_NODES):
    """
    Deficiency f(r) = -w'' - (sigma/r) w' of the solution on the unit ball.

    With s = r0 r and c = r0^{4/(p-1)} this is
    f(r) = -c r0^2 (v(s) - (1 - sigma) u'(s)/s), which vanishes at r = 1 by the
    boundary condition and tends to -(1 + sigma) w''(0) at the origin.

    Args:
        result (ShootingResult): Converged solution.
        sigma (float, optional): Boundary parameter, defaults to the result's.
        nodes (int): Interior samples on (0, 1].

    Returns:
        DeficiencyProfile: Samples, minimum, value at 1 and limit at 0.
    """
    sigma = result.params.sigma if sigma is None else sigma
    trajectory = result.trajectory
    r0, p = trajectory.r0, trajectory.p
    scale = r0 ** (4.0 / (p - 1.0)) * r0 ** 2

    r = np.linspace(0.0, 1.0, nodes + 1)[1:]
    s = np.minimum(r0 * r, r0)
    _, du, v, _ = trajectory.state_at(s)
    f = -scale * (v - (1.0 - sigma) * du / s)
    limit = -scale * trajectory.beta * (1.0 + sigma) / 2.0
    return DeficiencyProfile(r, f, float(np.min(f)), float(f[-1]), float(limit))


def boundary_limits(p, sigmas, R=1.0, options=None):
    """
    |u'(R)| and lap u(R) across a sigma ladder.

    At sigma = 1 the solution is Navier (lap u(R) = 0); as sigma grows the
    slope |u'(R)| shrinks toward the Dirichlet limit.

    Args:
        p (float): Exponent.
        sigmas (iterable): Boundary parameters.
        R (float): Radius.
        options (ShootingOptions, optional): Solver controls.

    Returns:
        list: One dict per sigma with keys sigma, du_R, lap_R.
    """
    rows = []
    for sigma in sigmas:
        result = solve_radial(SteklovParams(p, sigma, R), options)
        rows.append({
            "sigma": float(sigma),
            "du_R": float(result.profile.du[-1]),
            "lap_R": float(result.profile.lap[-1]),
        })
    return rows
