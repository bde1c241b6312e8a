"""
Constants for the plate lab.

This file contains the numerical defaults used throughout the application,
including integrator tolerances, scan grids, spectral truncation orders,
quadrature sizes and driver settings.
"""

import math

# -----------------------------------------------------------------------------
# Radial calculus
# -----------------------------------------------------------------------------
MIN_GRID_NODES = 8                  # RadialGrid lower bound
CONSISTENCY_TOL = 1e-8              # du vs reconstruction from lap
MONOTONE_TOL = 1e-10                # sign tolerance for monotonicity reports
CELL_GAUSS_POINTS = 8               # Gauss-Legendre points per grid cell

# -----------------------------------------------------------------------------
# Shooting
# -----------------------------------------------------------------------------
SERIES_START = 1e-4                 # epsilon, Taylor start radius
IVP_RTOL = 1e-11
IVP_ATOL = 1e-11
IVP_METHOD = "DOP853"               # embedded Runge-Kutta pair
R_MAX = 50.0                        # normalized units; beyond this: no zero

BETA_SCAN_LO = -1e4                 # scan bracket for beta = lap u(0)
BETA_SCAN_HI = -1e-3
BETA_SCAN_POINTS = 200              # log spaced
EDGE_BISECTIONS = 60                # shootable-edge refinement steps
EDGE_SAMPLE_DECADES = 12             # samples at beta_c - |beta_c| 10^-k

RESIDUAL_TOL = 1e-10                # |Q(beta*)| target
BRENT_XTOL = 1e-14
BRENT_MAXITER = 200

PROFILE_NODES = 1025                # samples of the rescaled profile on [0, R]
DEFICIENCY_NODES = 400              # interior samples of f on (0, 1]

SIGMA_CAP = 1e3                     # driver refuses larger sigma by default

# -----------------------------------------------------------------------------
# Disc spectral
# -----------------------------------------------------------------------------
BESSEL_MAX_ORDER = 60               # zero table limits
BESSEL_MAX_INDEX = 200

SPECTRAL_M = 12                     # max angular mode
SPECTRAL_K = 40                     # Bessel modes per angular mode
QUAD_RADIAL = 128                   # Gauss-Legendre radial points
QUAD_ANGULAR = 256                  # uniform angular points

DESCENT_GTOL = 1e-9                 # gradient norm in preconditioned units
DESCENT_FTOL = 1e-15
DESCENT_MAX_ITER = 10_000
DESCENT_MEMORY = 20                 # L-BFGS correction pairs
DESCENT_ROUNDOFF_FACTOR = 100.0     # gtol multiple accepted once the objective stalls
DESCENT_STALL_RTOL = 1e-12          # relative objective change of a stalled restart
ASYMMETRIC_SEED_WEIGHT = 0.5        # share of non-radial energy in a stress seed

# -----------------------------------------------------------------------------
# Rearrangement
# -----------------------------------------------------------------------------
CELL_RINGS = 128                    # annular cells per radius
CELL_SECTORS = 256                  # cells per ring
TALENTI_TOL = 1e-6
THRESHOLD_LADDER = 64               # levels for equimeasurability checks
CHAIN_EQUALITY_TOL = 1e-6           # norm and laplacian relations

# -----------------------------------------------------------------------------
# Limacon
# -----------------------------------------------------------------------------
LIMACON_A_MAX = 0.5                 # exclusive: h'(z) = 1 + 2az must not vanish
LIMACON_A_BAR = 0.4                 # largest a for ground states, inside (1/4, sqrt(6)/6)
LIMACON_A_BAR_LIMIT = math.sqrt(6.0) / 6.0
CONVEX_A = 0.25
CURVATURE_SCAN = 4096               # dense phi grid
CONVEX_TOL = 1e-12
DIST_XATOL = 1e-10
THRESHOLD_M = 10                    # nu_* truncation
THRESHOLD_K = 24
CURVE_FAMILY = (0.0, 0.25, math.sqrt(6.0) / 6.0, 0.5)
CURVE_SAMPLES = 721

# -----------------------------------------------------------------------------
# Driver
# -----------------------------------------------------------------------------
REPORT_SCHEMA_VERSION = 1
DEFAULT_OUT_DIR = "platelab_out"
OUT_ENV_VAR = "PLATELAB_OUT"
DEFAULT_SEED = 20240521
TALENTI_RANDOM_SOURCES = 20

EXPERIMENT_KINDS = (
    "shoot",
    "sweep-sigma",
    "ground-state",
    "steklov-eig",
    "talenti",
    "limacon",
    "verify-all",
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# -----------------------------------------------------------------------------
# Acceptance suite
# -----------------------------------------------------------------------------
ACCEPT_P = (0.5, 2.0, 3.0, 5.0)
ACCEPT_SIGMA = (-0.9, -0.5, 0.0, 1.0, 2.0, 10.0)
SCALING_P = (2.0, 3.0)
SCALING_TOL = 1e-8
DEFICIENCY_TOL = 1e-8
CROSS_CASES = ((3.0, 1.0), (3.0, 2.0), (2.0, 5.0))
CROSS_TOL = 1e-4
SYMMETRY_SIGMA = (1.0, 2.0, 5.0)
SYMMETRY_P = (2.0, 3.0)
RADIAL_FRACTION_TOL = 1e-6
NORM_TOL = 1e-6
CHAIN_CASE = (3.0, 2.0)             # (p, sigma)
HESSIAN_TOL = 1e-6
HESSIAN_RANDOM_FIELDS = 10
CONVEXITY_GRID = (0.0, 0.1, 0.2, 0.25, 0.3, 0.4)
CONFORMAL_TOL = 1e-12
NONCONVEX_A = 0.3
NONCONVEX_SIGMA = (1.0, 2.0)
NONCONVEX_P = 3.0
POSITIVITY_TOL = 1e-6               # relative to max |u|
PIPELINE_MATCH_TOL = 1e-8           # limacon a = 0 vs disc energy
TREND_SIGMA = (-0.9, -0.5, 0.0, 0.5)
