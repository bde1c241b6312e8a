"""
Shared fixtures for the plate lab tests.

Spectral fixtures use small truncations so the suite stays fast; the
acceptance-scale runs are marked slow.
"""

import sys
import os

import numpy as np
import pytest

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.params import SteklovParams
from radial.shooting import solve_radial
from spectral.basis import SpectralBasis


@pytest.fixture(scope="session")
def small_basis():
    """Unit-disc basis with M = 4, K = 20."""
    return SpectralBasis(1.0, M=4, K=20, n_radial=64, n_angular=32)


@pytest.fixture(scope="session")
def medium_basis():
    """Unit-disc basis with M = 6, K = 30, for checks that need more modes."""
    return SpectralBasis(1.0, M=6, K=30, n_radial=96, n_angular=48)


@pytest.fixture(scope="session")
def cubic_solution():
    """Converged shooting solution for p = 3, sigma = 1 on the unit disc."""
    return solve_radial(SteklovParams(3.0, 1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


def write_yaml(directory, text, name="experiment.yaml"):
    """Write config text into directory and return the path as a string."""
    path = directory / name
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def small_solver():
    """solver section for quick spectral runs."""
    return (
        "solver:\n"
        "  M: 4\n"
        "  K: 20\n"
        "  n_radial: 64\n"
        "  n_angular: 32\n"
        "  rings: 32\n"
        "  sectors: 64\n"
        "  sources: 1\n"
    )
