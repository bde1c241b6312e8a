"""Tests for experiment config parsing and validation."""

import pytest

from constants import DEFAULT_SEED
from exceptions import ConfigParseError, ConfigValidationError
from lab.config import ExperimentConfig, parse_config, SOLVER_DEFAULTS

from conftest import write_yaml

MINIMAL = """
experiment:
  kind: shoot
grid:
  p: 3
  sigma: [1, 2]
"""


def test_minimal_config():
    config = parse_config(MINIMAL)
    assert config.kind == "shoot"
    assert config.p == (3.0,)
    assert config.sigma == (1.0, 2.0)
    assert config.R == (1.0,)
    assert config.seed == DEFAULT_SEED
    assert config.solver == SOLVER_DEFAULTS
    assert config.format == "csv"


def test_config_from_file(tmp_path):
    path = write_yaml(tmp_path, MINIMAL)
    assert parse_config(path) == parse_config(MINIMAL)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigParseError):
        parse_config(str(tmp_path / "absent.yaml"))


def test_sigma_outside_window():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("experiment:\n  kind: shoot\ngrid:\n  sigma: -1\n")
    assert ("grid.sigma", "sigma > -1 required, got -1.0") in caught.value.violations
    assert "sigma > -1" in str(caught.value)


def test_sigma_above_cap():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("experiment:\n  kind: shoot\ngrid:\n  sigma: 5000\n")
    assert caught.value.violations[0][0] == "grid.sigma"


def test_unknown_key_is_named():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("experiment:\n  kind: shoot\ngrid:\n  q: 3\n")
    assert ("grid.q", "unknown key") in caught.value.violations


def test_unknown_section_is_named():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("experiment:\n  kind: shoot\nplots:\n  dpi: 3\n")
    assert ("plots", "unknown section") in caught.value.violations


def test_every_violation_is_reported():
    text = (
        "experiment:\n  kind: bake\n  seed: -3\n"
        "grid:\n  p: [1, 0]\n  a: 0.7\n"
        "solver:\n  M: 0.5\n"
        "output:\n  format: xml\n  jobs: 0\n"
    )
    with pytest.raises(ConfigValidationError) as caught:
        parse_config(text)
    fields = [name for name, _ in caught.value.violations]
    for expected in ("experiment.kind", "experiment.seed", "grid.p", "grid.a", "solver.M",
                     "output.format", "output.jobs"):
        assert expected in fields
    assert fields.count("grid.p") == 2


def test_coarse_angular_grid():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("experiment:\n  kind: ground-state\nsolver:\n  M: 10\n  n_angular: 16\n")
    assert caught.value.violations[0][0] == "solver.n_angular"


def test_malformed_yaml_reports_position():
    with pytest.raises(ConfigParseError) as caught:
        parse_config("experiment:\n  kind: [shoot\ngrid:\n  p: 3\n")
    assert caught.value.line >= 2
    assert caught.value.column >= 1


def test_root_must_be_mapping():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("- shoot\n- sweep-sigma\n")
    assert caught.value.violations[0][0] == "<root>"


def test_missing_kind():
    with pytest.raises(ConfigValidationError) as caught:
        parse_config("grid:\n  p: 3\n")
    assert ("experiment.kind", "missing") in caught.value.violations


def test_empty_grid_is_allowed():
    config = parse_config("experiment:\n  kind: shoot\ngrid:\n  sigma: []\n")
    assert config.sigma == ()


# -----------------------------------------------------------------------------
# Config object
# -----------------------------------------------------------------------------

def test_hash_ignores_output_settings():
    config = ExperimentConfig(kind="shoot")
    moved = config.with_overrides(out_dir="elsewhere", format="json", jobs=4)
    assert moved.config_hash() == config.config_hash()


def test_hash_tracks_numeric_content():
    config = ExperimentConfig(kind="shoot")
    assert config.with_overrides(seed=1).config_hash() != config.config_hash()
    assert config.with_overrides(sigma=(2.0,)).config_hash() != config.config_hash()
    assert len(config.config_hash()) == 64


def test_overrides_skip_none():
    config = ExperimentConfig(kind="shoot", seed=5)
    assert config.with_overrides(seed=None, jobs=None).seed == 5


def test_solver_options():
    config = parse_config(MINIMAL + "solver:\n  M: 3\n  K: 9\n  asymmetric: true\n  rings: 10\n")
    assert config.spectral_options().M == 3
    assert config.spectral_options().K == 9
    assert config.descent_options().asymmetric
    assert not config.descent_options(asymmetric=False).asymmetric
    assert config.descent_options().seed == config.seed
    assert config.rearrange_options().rings == 10


def test_configs_are_hashable():
    assert len({ExperimentConfig(kind="shoot"), ExperimentConfig(kind="shoot")}) == 1
