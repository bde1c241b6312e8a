"""
Experiment configuration.

An experiment file is a YAML document with up to four sections:

    experiment:  kind, seed, name
    grid:        p, sigma, a, R          (scalars or lists)
    solver:      truncation, quadrature and descent controls
    output:      dir, format, data

Every violation is collected before anything is raised, so a bad file is
reported in one pass.
"""

import sys
import os
import hashlib
import json
import logging
from dataclasses import dataclass, field, asdict

import yaml

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from constants import (
    EXPERIMENT_KINDS, DEFAULT_SEED, DEFAULT_OUT_DIR, SIGMA_CAP, LIMACON_A_MAX,
    SPECTRAL_M, SPECTRAL_K, QUAD_RADIAL, QUAD_ANGULAR, CELL_RINGS, CELL_SECTORS,
    DESCENT_GTOL, DESCENT_MAX_ITER, BETA_SCAN_POINTS, TALENTI_RANDOM_SOURCES,
)
from exceptions import ConfigParseError, ConfigValidationError
from models.options import SpectralOptions, DescentOptions, RearrangeOptions, ShootingOptions

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")

GRID_DEFAULTS = {"p": (3.0,), "sigma": (1.0,), "a": (0.0,), "R": (1.0,)}

SOLVER_DEFAULTS = {
    "M": SPECTRAL_M,
    "K": SPECTRAL_K,
    "n_radial": QUAD_RADIAL,
    "n_angular": QUAD_ANGULAR,
    "rings": CELL_RINGS,
    "sectors": CELL_SECTORS,
    "gtol": DESCENT_GTOL,
    "max_iter": DESCENT_MAX_ITER,
    "scan_points": BETA_SCAN_POINTS,
    "asymmetric": False,
    "sources": TALENTI_RANDOM_SOURCES,
    "sigma_cap": SIGMA_CAP,
}

SECTIONS = {
    "experiment": ("kind", "seed", "name"),
    "grid": tuple(GRID_DEFAULTS),
    "solver": tuple(SOLVER_DEFAULTS),
    "output": ("dir", "format", "data", "jobs"),
}

_INT_KEYS = ("M", "K", "n_radial", "n_angular", "rings", "sectors", "max_iter", "scan_points", "sources")


@dataclass(frozen=True)
class ExperimentConfig:
    """
    A validated experiment.

    Attributes:
        kind (str): One of EXPERIMENT_KINDS.
        p, sigma, a, R (tuple): Parameter grids; an empty grid means no runs.
        solver (dict): Solver controls, every key of SOLVER_DEFAULTS present.
        out_dir (str): Output directory.
        format (str): "csv" or "json".
        data (bool): Write plot-ready data files next to the report.
        jobs (int): Worker processes for grid points.
        seed (int): Seed for every random draw of the run.
        name (str): Free label.
    """

    kind: str
    p: tuple = GRID_DEFAULTS["p"]
    sigma: tuple = GRID_DEFAULTS["sigma"]
    a: tuple = GRID_DEFAULTS["a"]
    R: tuple = GRID_DEFAULTS["R"]
    solver: dict = field(default_factory=lambda: dict(SOLVER_DEFAULTS))
    out_dir: str = DEFAULT_OUT_DIR
    format: str = "csv"
    data: bool = True
    jobs: int = 1
    seed: int = DEFAULT_SEED
    name: str = ""

    def __hash__(self):
        return hash(self.config_hash())

    def with_overrides(self, **changes):
        """Copy with top-level fields replaced (CLI flags)."""
        values = asdict(self)
        values.update({key: value for key, value in changes.items() if value is not None})
        return ExperimentConfig(**values)

    def canonical(self):
        """Numeric content of the config as a plain dict; output settings excluded."""
        return {
            "kind": self.kind,
            "grid": {"p": list(self.p), "sigma": list(self.sigma), "a": list(self.a), "R": list(self.R)},
            "solver": {key: self.solver[key] for key in sorted(self.solver)},
            "seed": self.seed,
        }

    def config_hash(self):
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    # -------------------------------------------------------------------------
    # Options for the solver modules
    # -------------------------------------------------------------------------

    def spectral_options(self):
        s = self.solver
        return SpectralOptions(s["M"], s["K"], s["n_radial"], s["n_angular"])

    def descent_options(self, asymmetric=None):
        s = self.solver
        return DescentOptions(
            gtol=s["gtol"], max_iter=s["max_iter"], seed=self.seed,
            asymmetric=s["asymmetric"] if asymmetric is None else asymmetric,
        )

    def rearrange_options(self):
        return RearrangeOptions(self.solver["rings"], self.solver["sectors"])

    def shooting_options(self):
        return ShootingOptions(scan_points=self.solver["scan_points"])


# -----------------------------------------------------------------------------
# Parsing
# -----------------------------------------------------------------------------

def _looks_like_path(source):
    return "\n" not in source and (os.path.isfile(source) or source.endswith((".yaml", ".yml")))


def _load_text(source):
    if hasattr(source, "read_text") or (isinstance(source, str) and _looks_like_path(source)):
        try:
            with open(source, "r", encoding="utf-8") as handle:
                return handle.read()
        except OSError as error:
            raise ConfigParseError(f"cannot read {source}: {error.strerror}", 0, 0) from None
    if isinstance(source, str):
        return source
    raise ConfigParseError(f"expected a path or YAML text, got {type(source).__name__}", 0, 0)


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _grid(name, value, violations):
    values = value if isinstance(value, list) else [value]
    out = []
    for item in values:
        if not _is_number(item):
            violations.append((f"grid.{name}", f"expected numbers, got {item!r}"))
            continue
        out.append(float(item))
    return tuple(out)


def _check_grids(grids, sigma_cap, violations):
    for p in grids["p"]:
        if not p > 0.0 or p == 1.0:
            violations.append(("grid.p", f"p > 0 and p != 1 required, got {p}"))
    for sigma in grids["sigma"]:
        if not sigma > -1.0:
            violations.append(("grid.sigma", f"sigma > -1 required, got {sigma}"))
        elif sigma > sigma_cap:
            violations.append(("grid.sigma", f"sigma <= {sigma_cap} required, got {sigma}"))
    for a in grids["a"]:
        if not 0.0 <= a < LIMACON_A_MAX:
            violations.append(("grid.a", f"0 <= a < 1/2 required, got {a}"))
    for R in grids["R"]:
        if not R > 0.0:
            violations.append(("grid.R", f"R > 0 required, got {R}"))


def _solver(section, violations):
    solver = dict(SOLVER_DEFAULTS)
    for key, value in section.items():
        if key in _INT_KEYS:
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                violations.append((f"solver.{key}", f"positive integer required, got {value!r}"))
                continue
        elif key == "asymmetric":
            if not isinstance(value, bool):
                violations.append(("solver.asymmetric", f"true or false required, got {value!r}"))
                continue
        elif not _is_number(value) or not value > 0.0:
            violations.append((f"solver.{key}", f"positive number required, got {value!r}"))
            continue
        solver[key] = value
    if solver["n_angular"] < 2 * solver["M"] + 2:
        violations.append(("solver.n_angular", "at least 2 M + 2 angular points required"))
    if solver["scan_points"] < 2:
        violations.append(("solver.scan_points", "at least two scan points required"))
    if solver["rings"] < 2 or solver["sectors"] < 4:
        violations.append(("solver.rings", "at least 2 rings and 4 sectors required"))
    return solver


def parse_config(source):
    """
    Parse and validate an experiment.

    Args:
        source (str or Path): Path to a YAML file, or the YAML text itself.

    Returns:
        ExperimentConfig: The validated experiment.

    Raises:
        ConfigParseError: Unreadable file or malformed YAML, with line/column.
        ConfigValidationError: Every violated field at once.
    """
    text = _load_text(source)
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as error:
        mark = getattr(error, "problem_mark", None)
        line, column = (mark.line + 1, mark.column + 1) if mark is not None else (0, 0)
        problem = getattr(error, "problem", None) or str(error)
        raise ConfigParseError(problem, line, column) from None

    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise ConfigValidationError([("<root>", "the document must be a mapping of sections")])

    violations = []
    sections = {}
    for name, body in document.items():
        if name not in SECTIONS:
            violations.append((str(name), "unknown section"))
            continue
        body = {} if body is None else body
        if not isinstance(body, dict):
            violations.append((name, "section must be a mapping of key: value pairs"))
            continue
        for key in body:
            if key not in SECTIONS[name]:
                violations.append((f"{name}.{key}", "unknown key"))
        sections[name] = {key: value for key, value in body.items() if key in SECTIONS[name]}

    experiment = sections.get("experiment", {})
    kind = experiment.get("kind")
    if kind is None:
        violations.append(("experiment.kind", "missing"))
    elif kind not in EXPERIMENT_KINDS:
        violations.append(("experiment.kind", f"must be one of {', '.join(EXPERIMENT_KINDS)}, got {kind!r}"))
    seed = experiment.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        violations.append(("experiment.seed", f"non-negative integer required, got {seed!r}"))

    solver = _solver(sections.get("solver", {}), violations)

    grid_section = sections.get("grid", {})
    grids = {
        name: _grid(name, grid_section[name], violations) if name in grid_section else default
        for name, default in GRID_DEFAULTS.items()
    }
    _check_grids(grids, solver["sigma_cap"], violations)

    output = sections.get("output", {})
    fmt = output.get("format", "csv")
    if fmt not in FORMATS:
        violations.append(("output.format", f"must be csv or json, got {fmt!r}"))
    jobs = output.get("jobs", 1)
    if not isinstance(jobs, int) or isinstance(jobs, bool) or jobs < 1:
        violations.append(("output.jobs", f"positive integer required, got {jobs!r}"))
    data = output.get("data", True)
    if not isinstance(data, bool):
        violations.append(("output.data", f"true or false required, got {data!r}"))

    if violations:
        raise ConfigValidationError(violations)

    config = ExperimentConfig(
        kind=kind,
        solver=solver,
        out_dir=str(output.get("dir", DEFAULT_OUT_DIR)),
        format=fmt,
        data=data,
        jobs=jobs,
        seed=seed,
        name=str(experiment.get("name", "")),
        **grids,
    )
    logger.debug("parsed %s experiment, config hash %s", config.kind, config.config_hash()[:12])
    return config
