"""
Experiment pipelines.

Each grid point runs a pure pipeline and yields one or more records. A
module error is captured on its record and the sweep moves on. With
jobs > 1 the points are farmed out to worker processes; results are merged
in grid order, never completion order.
"""

import sys
import os
import math
import time
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from multiprocessing import Pool

import numpy as np
from scipy.integrate import simpson

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import (
    RESIDUAL_TOL, TALENTI_TOL, CHAIN_EQUALITY_TOL, CONVEX_A,
    THRESHOLD_M, THRESHOLD_K, CURVATURE_SCAN,
    ACCEPT_P, ACCEPT_SIGMA, SCALING_P, SCALING_TOL, DEFICIENCY_TOL, CROSS_CASES, CROSS_TOL,
    SYMMETRY_SIGMA, SYMMETRY_P, RADIAL_FRACTION_TOL, NORM_TOL, CHAIN_CASE,
    HESSIAN_TOL, HESSIAN_RANDOM_FIELDS, CONVEXITY_GRID, CONFORMAL_TOL,
    NONCONVEX_A, NONCONVEX_SIGMA, NONCONVEX_P, POSITIVITY_TOL, PIPELINE_MATCH_TOL, TREND_SIGMA,
    CURVE_FAMILY,
)
from exceptions import PlateLabError
from models.params import SteklovParams
from models.report import RunRecord, RunReport
from radial.radial_core import check_monotonicity
from radial.shooting import solve_radial, deficiency_profile
from spectral.basis import SpectralBasis, SIN
from spectral.field import SpectralField, evaluate_grid
from spectral.forms import steklov_eigenvalue, hessian_identity_check
from spectral.ground_state import ground_state
from symmetry.rearrange import sample_polar, schwarz_rearrange
from symmetry.talenti import talenti_compare, boundary_chain_check
from geometry.limacon import LimaconDomain, is_convex, curvature, curvature_split, boundary_point
from geometry.pullback import steklov_threshold, limacon_ground_state
from lab.export import profile_columns, ray_columns

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def _basis(R, options):
    return SpectralBasis(R, options=options)


def _threshold_basis(options):
    return _basis(1.0, replace(options, M=THRESHOLD_M, K=THRESHOLD_K))


def _error_text(error):
    return f"{type(error).__name__}: {error}"


# -----------------------------------------------------------------------------
# Sources for the comparison experiments
# -----------------------------------------------------------------------------

def unit_source(r, theta):
    return np.ones(np.broadcast(r, theta).shape)


@dataclass(frozen=True)
class SmoothSource:
    """
    Positive source exp(sum_m c_m r^m cos(m theta - phase_m)).

    Attributes:
        amplitudes (tuple): c_m for m = 0, 1, ...
        phases (tuple): Phase per mode.
    """

    amplitudes: tuple
    phases: tuple

    def __call__(self, r, theta):
        r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
        exponent = np.zeros(r.shape)
        for m, (c, phase) in enumerate(zip(self.amplitudes, self.phases)):
            exponent = exponent + c * r ** m * np.cos(m * theta - phase)
        return np.exp(exponent)

    @classmethod
    def random(cls, seed, index, modes=4):
        """Draw the index-th source of a seeded family."""
        rng = np.random.default_rng([seed, index])
        amplitudes = rng.uniform(-0.5, 0.5, modes + 1)
        phases = rng.uniform(0.0, 2.0 * math.pi, modes + 1)
        return cls(tuple(amplitudes.tolist()), tuple(phases.tolist()))


def comparison_source(seed, index):
    """Source 0 is f = 1, the equality case; the rest are seeded draws."""
    if index == 0:
        return "constant", unit_source
    return "random", SmoothSource.random(seed, index)


# -----------------------------------------------------------------------------
# Grid pipelines
# -----------------------------------------------------------------------------

def _shoot(config, index, values, checks, artifacts):
    params = SteklovParams(values["p"], values["sigma"], values["R"])
    result = solve_radial(params, config.shooting_options())
    values.update(result.summary())
    checks["residual"] = result.converged
    checks["unique_root"] = result.root_count == 1
    checks["monotone"] = check_monotonicity(result.profile).within_tolerance
    if config.data:
        artifacts[f"profile_{index:03d}.csv"] = profile_columns(result.profile)
    return result


def _sweep_sigma(config, index, values, checks, artifacts):
    result = _shoot(config, index, values, checks, artifacts)
    deficiency = deficiency_profile(result)
    values["du_R"] = result.profile.du[-1]
    values["lap_R"] = result.profile.lap[-1]
    values["min_deficiency"] = deficiency.min_f
    values["deficiency_at_one"] = deficiency.f_at_one
    checks["deficiency"] = (deficiency.min_f >= -DEFICIENCY_TOL
                            and abs(deficiency.f_at_one) <= DEFICIENCY_TOL)


def _ground_state(config, index, values, checks, artifacts):
    params = SteklovParams(values["p"], values["sigma"], values["R"])
    basis = _basis(params.R, config.spectral_options())
    report = ground_state(params, basis, config.descent_options())
    values.update(report.summary())
    checks["converged"] = report.converged
    checks["positive"] = report.min_value >= -POSITIVITY_TOL * report.max_abs
    if config.data:
        artifacts[f"ray_{index:03d}.csv"] = ray_columns(report.field)


def _steklov_eig(config, index, values, checks, artifacts):
    options = config.spectral_options()
    if values["a"] == 0.0:
        spectrum = steklov_eigenvalue(_basis(values["R"], options))
        m = values["m"]
        values["delta"] = spectrum.per_mode[m]
        values["nu_star"] = spectrum.positivity_threshold()
        checks["closed_form"] = abs(values["delta"] - (2.0 * m + 2.0)) <= 1e-6
        return
    threshold = steklov_threshold(LimaconDomain(values["a"]), _threshold_basis(options))
    values["delta"] = threshold.delta_abs
    values["delta_minus"] = threshold.delta_minus
    values["nu_star"] = threshold.nu_star
    checks["threshold_below_one"] = threshold.nu_star < 1.0


def _rearranged_norm_gap(field, options, exponents):
    samples = sample_polar(field, options=options)
    profile = schwarz_rearrange(samples)
    gaps = [abs(samples.norm(p + 1.0) - profile.norm(p + 1.0)) for p in exponents]
    return max(gaps) if gaps else None


def _talenti(config, index, values, checks, artifacts):
    label, source = comparison_source(config.seed, values["source"])
    values["label"] = label
    options = config.rearrange_options()
    report = talenti_compare(source, _basis(1.0, config.spectral_options()), options)
    values["max_excess"] = report.max_excess
    values["max_gap"] = report.max_gap
    values["norm_gap"] = _rearranged_norm_gap(report.solution, options, config.p)
    checks["comparison"] = report.holds
    if label == "constant":
        checks["equality"] = report.max_gap <= TALENTI_TOL
    if values["norm_gap"] is not None:
        checks["norm"] = values["norm_gap"] <= NORM_TOL


def _limacon(config, index, values, checks, artifacts):
    domain = LimaconDomain(values["a"])
    convexity = is_convex(domain)
    split = curvature_split(domain)
    options = config.spectral_options()
    threshold = steklov_threshold(domain, _threshold_basis(options))
    values.update(
        convex=convexity.convex,
        min_kappa=convexity.min_kappa,
        negative_length=split.negative_length,
        nu_star=threshold.nu_star,
        delta_minus=threshold.delta_minus,
    )
    checks["convexity"] = convexity.convex == (domain.a <= CONVEX_A)

    params = SteklovParams(values["p"], values["sigma"], domain="limacon", a=domain.a)
    report = limacon_ground_state(domain, params, _basis(1.0, options), config.descent_options())
    values.update(
        energy=report.energy,
        min_value=report.min_value,
        max_abs=report.max_abs,
        radial_fraction=report.radial_fraction,
    )
    checks["converged"] = report.converged
    checks["positive"] = report.min_value >= -POSITIVITY_TOL * report.max_abs


PIPELINES = {
    "shoot": _shoot,
    "sweep-sigma": _sweep_sigma,
    "ground-state": _ground_state,
    "steklov-eig": _steklov_eig,
    "talenti": _talenti,
    "limacon": _limacon,
}


def grid_points(config):
    """Inputs of every grid point, in report order."""
    kind = config.kind
    if kind == "shoot" or kind == "ground-state":
        return [{"p": p, "sigma": s, "R": R} for p in config.p for s in config.sigma for R in config.R]
    if kind == "sweep-sigma":
        return [{"p": p, "sigma": s, "R": R} for p in config.p for R in config.R for s in config.sigma]
    if kind == "steklov-eig":
        points = []
        for a in config.a:
            if a == 0.0:
                M = config.solver["M"]
                points += [{"R": R, "a": 0.0, "m": m} for R in config.R for m in range(M + 1)]
            else:
                points.append({"R": 1.0, "a": a, "m": None})
        return points
    if kind == "talenti":
        return [{"source": i} for i in range(config.solver["sources"] + 1)]
    if kind == "limacon":
        return [{"a": a, "p": p, "sigma": s} for a in config.a for p in config.p for s in config.sigma]
    if kind == "verify-all":
        return verify_points(config)
    raise PlateLabError(f"unknown experiment kind {kind!r}")


# -----------------------------------------------------------------------------
# Acceptance suite
# -----------------------------------------------------------------------------

def _row(criterion, check, value, bound, passed):
    return {"criterion": criterion, "check": check, "value": value, "bound": bound, "passed": bool(passed)}


def _verify_steklov(config):
    basis = _basis(1.0, config.spectral_options())
    spectrum = steklov_eigenvalue(basis)
    modes = np.arange(min(5, basis.M) + 1)
    mode_error = float(np.max(np.abs(spectrum.per_mode[modes] - (2.0 * modes + 2.0))))
    return [
        _row("steklov", "delta_1 = 2", abs(spectrum.delta - 2.0), 1e-8, abs(spectrum.delta - 2.0) <= 1e-8),
        _row("steklov", "delta_m = 2m + 2, m <= 5", mode_error, 1e-6, mode_error <= 1e-6),
        _row("steklov", "nu_* = -1", spectrum.positivity_threshold(), -1.0,
             abs(spectrum.positivity_threshold() + 1.0) <= 1e-8),
    ]


def _verify_radial(config, p, sigma):
    label = f"p={p:g}, sigma={sigma:g}"
    result = solve_radial(SteklovParams(p, sigma), config.shooting_options())
    monotone = check_monotonicity(result.profile)
    deficiency = deficiency_profile(result)
    return [
        _row("uniqueness", f"{label}: sign changes", result.root_count, 1, result.root_count == 1),
        _row("uniqueness", f"{label}: residual", result.residual, RESIDUAL_TOL,
             result.residual <= RESIDUAL_TOL),
        _row("monotonicity", f"{label}: max u'", monotone.du_worst, monotone.tolerance,
             monotone.du_worst <= monotone.tolerance),
        _row("monotonicity", f"{label}: min (lap u)'", monotone.dlap_worst, -monotone.tolerance,
             monotone.dlap_worst >= -monotone.tolerance),
        _row("deficiency", f"{label}: min f", deficiency.min_f, -DEFICIENCY_TOL,
             deficiency.min_f >= -DEFICIENCY_TOL),
        _row("deficiency", f"{label}: f(1)", deficiency.f_at_one, DEFICIENCY_TOL,
             abs(deficiency.f_at_one) <= DEFICIENCY_TOL),
    ]


def _verify_scaling(config, p):
    options = config.shooting_options()
    unit = solve_radial(SteklovParams(p, 1.0, 1.0), options)
    double = solve_radial(SteklovParams(p, 1.0, 2.0), options)
    # same node index means r = 2 r_unit on the doubled disc
    expected = 2.0 ** (-4.0 / (p - 1.0)) * unit.profile.u
    error = float(np.max(np.abs(double.profile.u - expected)) / np.max(np.abs(double.profile.u)))
    return [_row("scaling", f"p={p:g}: R = 1 vs R = 2", error, SCALING_TOL, error <= SCALING_TOL)]


def _verify_cross_solver(config, p, sigma):
    params = SteklovParams(p, sigma)
    radial = solve_radial(params, config.shooting_options())
    spectral = ground_state(params, _basis(1.0, config.spectral_options()), config.descent_options())
    ray = evaluate_grid(spectral.field, radial.profile.r, [0.0])[:, 0]
    error = float(np.max(np.abs(ray - radial.profile.u)))
    return [_row("cross-solver", f"p={p:g}, sigma={sigma:g}: max |u_shoot - u_spectral|",
                 error, CROSS_TOL, error <= CROSS_TOL)]


def _verify_symmetry(config, p, sigma):
    label = f"p={p:g}, sigma={sigma:g}"
    report = ground_state(SteklovParams(p, sigma), _basis(1.0, config.spectral_options()),
                          config.descent_options(asymmetric=True))
    return [
        _row("symmetry", f"{label}: radial fraction", report.radial_fraction,
             1.0 - RADIAL_FRACTION_TOL, report.radial_fraction >= 1.0 - RADIAL_FRACTION_TOL),
        _row("symmetry", f"{label}: min u", report.min_value, 0.0, report.min_value > 0.0),
    ]


def _verify_talenti(config, source):
    label, fn = comparison_source(config.seed, source)
    options = config.rearrange_options()
    report = talenti_compare(fn, _basis(1.0, config.spectral_options()), options)
    norm_gap = _rearranged_norm_gap(report.solution, options, (NONCONVEX_P,))
    name = f"source {source} ({label})"
    rows = [
        _row("talenti", f"{name}: max(u* - v)", report.max_excess, TALENTI_TOL, report.holds),
        _row("talenti", f"{name}: norm preservation", norm_gap, NORM_TOL, norm_gap <= NORM_TOL),
    ]
    if label == "constant":
        rows.append(_row("talenti", f"{name}: max |u* - v|", report.max_gap, TALENTI_TOL,
                         report.max_gap <= TALENTI_TOL))
    return rows


def _verify_chain(config):
    p, sigma = CHAIN_CASE
    params = SteklovParams(p, sigma)
    ground = ground_state(params, _basis(1.0, config.spectral_options()), config.descent_options())
    chain = boundary_chain_check(ground, params)
    return [
        _row("chain", f"{rel.name}: rhs - lhs", rel.slack, 0.0, rel.holds(CHAIN_EQUALITY_TOL))
        for rel in chain.relations()
    ]


def _random_field(basis, rng, modes=4, radial=8):
    coeffs = basis.zeros_like()
    m = min(modes, basis.M) + 1
    k = min(radial, basis.K)
    scale = 1.0 / (1.0 + np.arange(m)[:, None] + np.arange(k)[None, :]) ** 2
    coeffs[:, :m, :k] = rng.standard_normal((2, m, k)) * scale
    coeffs[:, :m, basis.K] = rng.standard_normal((2, m)) / (1.0 + np.arange(m))
    coeffs[SIN, 0] = 0.0
    return SpectralField(basis, coeffs)


def _verify_hessian(config):
    basis = _basis(1.0, config.spectral_options())
    rows = []
    bowl = hessian_identity_check(SpectralField.from_function(basis, lambda r, t: 1.0 - r ** 2 + 0.0 * t))
    rows.append(_row("hessian", "u = 1 - r^2: interior = 4 pi", bowl.interior, 4.0 * math.pi,
                     abs(bowl.interior - 4.0 * math.pi) <= HESSIAN_TOL))
    rows.append(_row("hessian", "u = 1 - r^2: identity", abs(bowl.difference), HESSIAN_TOL,
                     abs(bowl.difference) <= HESSIAN_TOL))
    clamped = hessian_identity_check(
        SpectralField.from_function(basis, lambda r, t: (1.0 - r ** 2) ** 2 + 0.0 * t))
    rows.append(_row("hessian", "u = (1 - r^2)^2: identity", abs(clamped.difference), HESSIAN_TOL,
                     abs(clamped.difference) <= HESSIAN_TOL))
    rng = np.random.default_rng(config.seed)
    for i in range(HESSIAN_RANDOM_FIELDS):
        identity = hessian_identity_check(_random_field(basis, rng))
        rows.append(_row("hessian", f"random field {i}: identity", abs(identity.difference),
                         HESSIAN_TOL, abs(identity.difference) <= HESSIAN_TOL))
    return rows


def _verify_limacon_geometry(config):
    rows = []
    for a in CONVEXITY_GRID:
        report = is_convex(LimaconDomain(a))
        rows.append(_row("limacon-geometry", f"a={a:g}: convex iff a <= 1/4", report.min_kappa,
                         -1e-12, report.convex == (a <= CONVEX_A)))
    kappa_pi = float(curvature(LimaconDomain(CONVEX_A), math.pi))
    rows.append(_row("limacon-geometry", "a=0.25: kappa(pi) = 0", kappa_pi, 1e-8, abs(kappa_pi) <= 1e-8))
    phi = np.linspace(0.0, 2.0 * math.pi, CURVATURE_SCAN, endpoint=False)
    error = 0.0
    for a in CONVEXITY_GRID:
        domain = LimaconDomain(a)
        image = domain.conformal_map(np.exp(1j * phi))
        x, y = boundary_point(domain, phi)
        error = max(error, float(np.max(np.abs(image - (x + 1j * y)))))
    rows.append(_row("limacon-geometry", "conformal vs polar boundary", error, CONFORMAL_TOL,
                     error <= CONFORMAL_TOL))
    return rows


def _verify_limacon_positivity(config, sigma):
    domain = LimaconDomain(NONCONVEX_A)
    params = SteklovParams(NONCONVEX_P, sigma, domain="limacon", a=domain.a)
    report = limacon_ground_state(domain, params, _basis(1.0, config.spectral_options()),
                                  config.descent_options())
    ratio = report.min_value / report.max_abs
    return [_row("limacon-positivity", f"a={domain.a:g}, sigma={sigma:g}: min u / max |u|",
                 ratio, -POSITIVITY_TOL, ratio >= -POSITIVITY_TOL)]


def _verify_limacon_disc(config):
    basis = _basis(1.0, config.spectral_options())
    params = SteklovParams(NONCONVEX_P, 1.0)
    disc = ground_state(params, basis, config.descent_options())
    limacon = limacon_ground_state(LimaconDomain(0.0), params, basis, config.descent_options())
    gap = abs(disc.energy - limacon.energy)
    return [_row("limacon-disc", "a=0 energy vs disc energy", gap, PIPELINE_MATCH_TOL,
                 gap <= PIPELINE_MATCH_TOL)]


def _radial_energy_norm(result):
    """||u||^2_{H_sigma} of a radial profile on the disc of radius R."""
    profile, sigma = result.profile, result.params.sigma
    interior = 2.0 * math.pi * simpson(profile.lap ** 2 * profile.r, x=profile.r)
    return interior - (1.0 - sigma) * 2.0 * math.pi * profile.du[-1] ** 2


def _radial_energy(result):
    """J_sigma of a radial solution; on the Nehari set J = (1/2 - 1/(p+1)) ||u||^2."""
    p = result.params.p
    return (0.5 - 1.0 / (p + 1.0)) * _radial_energy_norm(result)


def _verify_sigma_trend(config):
    basis = _basis(1.0, config.spectral_options())
    descent = config.descent_options()
    sublinear = [ground_state(SteklovParams(0.5, s), basis, descent) for s in TREND_SIGMA]
    superlinear = [ground_state(SteklovParams(3.0, s), basis, descent) for s in TREND_SIGMA]
    steps = np.diff([report.max_abs for report in sublinear])
    gains = np.diff([report.quadratic for report in superlinear])
    rows = [
        _row("sigma-trend", "p=0.5: max |u| decreasing in sigma", float(np.max(steps)), 0.0,
             np.all(steps < 0.0)),
        _row("sigma-trend", "p=3: energy norm increasing in sigma", float(np.min(gains)), 0.0,
             np.all(gains > 0.0)),
    ]

    # a ground state never has more energy than the radial solution
    options = config.shooting_options()
    for p, reports in ((0.5, sublinear), (3.0, superlinear)):
        for sigma, report in zip(TREND_SIGMA, reports):
            radial = _radial_energy(solve_radial(SteklovParams(p, sigma), options))
            excess = report.energy - radial
            bound = CROSS_TOL * max(1.0, abs(radial))
            rows.append(_row("sigma-trend", f"p={p:g}, sigma={sigma:g}: J(ground) - J(radial)",
                             excess, bound, excess <= bound))
    return rows


def _verify_determinism(config):
    from lab.config import ExperimentConfig
    from lab.report import render_csv

    small = dict(config.solver, M=2, K=10, n_radial=32, n_angular=16)
    cases = (
        ExperimentConfig(kind="shoot", p=(3.0,), sigma=(1.0, 2.0), R=(1.0,), data=False, seed=config.seed),
        ExperimentConfig(kind="ground-state", p=(3.0,), sigma=(2.0,), R=(1.0,), solver=small,
                         data=False, seed=config.seed),
    )
    rows = []
    for case in cases:
        first = render_csv(run_experiment(case))
        second = render_csv(run_experiment(case))
        rows.append(_row("determinism", f"{case.kind}: repeated run", int(first != second), 0,
                         first == second))
    return rows


VERIFY = {
    "steklov": _verify_steklov,
    "radial": _verify_radial,
    "scaling": _verify_scaling,
    "cross-solver": _verify_cross_solver,
    "symmetry": _verify_symmetry,
    "talenti": _verify_talenti,
    "chain": _verify_chain,
    "hessian": _verify_hessian,
    "limacon-geometry": _verify_limacon_geometry,
    "limacon-positivity": _verify_limacon_positivity,
    "limacon-disc": _verify_limacon_disc,
    "sigma-trend": _verify_sigma_trend,
    "determinism": _verify_determinism,
}


def verify_points(config):
    """Acceptance checks as (check name, arguments) points."""
    points = [{"check": "steklov", "args": {}}]
    points += [{"check": "radial", "args": {"p": p, "sigma": s}} for p in ACCEPT_P for s in ACCEPT_SIGMA]
    points += [{"check": "scaling", "args": {"p": p}} for p in SCALING_P]
    points += [{"check": "cross-solver", "args": {"p": p, "sigma": s}} for p, s in CROSS_CASES]
    points += [{"check": "symmetry", "args": {"p": p, "sigma": s}} for s in SYMMETRY_SIGMA for p in SYMMETRY_P]
    points += [{"check": "talenti", "args": {"source": i}} for i in range(config.solver["sources"] + 1)]
    points += [{"check": name, "args": {}} for name in ("chain", "hessian", "limacon-geometry")]
    points += [{"check": "limacon-positivity", "args": {"sigma": s}} for s in NONCONVEX_SIGMA]
    points += [{"check": name, "args": {}} for name in ("limacon-disc", "sigma-trend", "determinism")]
    return points


# -----------------------------------------------------------------------------
# Driver
# -----------------------------------------------------------------------------

def run_point(task):
    """
    Run one grid point; module errors are captured, never raised.

    Args:
        task (tuple): (config, index, inputs).

    Returns:
        tuple: (rows, artifacts, seconds) with rows as (values, checks, error).
    """
    config, index, inputs = task
    start = time.perf_counter()
    artifacts = {}
    if config.kind == "verify-all":
        name = inputs["check"]
        try:
            rows = [(row, {"passed": row["passed"]}, None) for row in VERIFY[name](config, **inputs["args"])]
        except PlateLabError as error:
            logger.warning("verify check %s %s failed: %s", name, inputs["args"], error)
            label = ", ".join(f"{key}={value:g}" for key, value in inputs["args"].items()) or name
            rows = [(_row(name, label, None, None, False), {}, _error_text(error))]
        return rows, artifacts, time.perf_counter() - start

    values = dict(inputs)
    checks = {}
    error = None
    try:
        PIPELINES[config.kind](config, index, values, checks, artifacts)
    except PlateLabError as exc:
        error = _error_text(exc)
        logger.warning("%s point %d %s failed: %s", config.kind, index, inputs, exc)
    return [(values, checks, error)], artifacts, time.perf_counter() - start


def _map(tasks, jobs):
    if jobs > 1 and len(tasks) > 1:
        with Pool(processes=min(jobs, len(tasks))) as pool:
            return pool.map(run_point, tasks)
    return [run_point(task) for task in tasks]


def run_experiment(config):
    """
    Execute the experiment a config describes.

    Args:
        config (ExperimentConfig): Validated config.

    Returns:
        RunReport: Records in grid order; failures are marked, not raised.
    """
    start = time.perf_counter()
    config_hash = config.config_hash()
    points = grid_points(config)
    tasks = [(config, index, inputs) for index, inputs in enumerate(points)]
    logger.info("running %s: %d points on %d job(s)", config.kind, len(tasks), config.jobs)

    report = RunReport(kind=config.kind, config_hash=config_hash)
    point_seconds = 0.0
    for rows, artifacts, seconds in _map(tasks, config.jobs):
        for values, checks, error in rows:
            report.records.append(
                RunRecord(config.kind, len(report.records), values, checks, error, config_hash)
            )
        report.artifacts.update(artifacts)
        point_seconds += seconds
    if config.data and config.kind in ("limacon", "verify-all"):
        report.curve_family = CURVE_FAMILY

    report.timings = {"points": point_seconds, "total": time.perf_counter() - start}
    failed = len(report.failures())
    log = logger.warning if failed else logger.info
    log("%s finished: %d records, %d failed, %.2f s", config.kind, len(report.records), failed,
        report.timings["total"])
    return report
