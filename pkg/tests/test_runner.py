"""Tests for the experiment runner."""

import numpy as np
import pytest

from constants import CURVE_FAMILY
from lab.config import parse_config, ExperimentConfig
from lab.report import render_csv
from lab.runner import (
    SmoothSource, comparison_source, grid_points, run_experiment, run_point, VERIFY,
)


def config_text(kind, grid="", solver="", output="  data: false\n"):
    return f"experiment:\n  kind: {kind}\n  seed: 7\n{grid}{solver}output:\n{output}"


def test_disc_steklov_eigenvalues(small_solver):
    config = parse_config(config_text("steklov-eig", solver=small_solver))
    report = run_experiment(config)
    assert [record.values["m"] for record in report.records] == [0, 1, 2, 3, 4]
    deltas = [record.values["delta"] for record in report.records]
    assert deltas[:3] == pytest.approx([2.0, 4.0, 6.0], abs=1e-8)
    assert report.passed
    assert all(record.config_hash == config.config_hash() for record in report.records)


def test_empty_grid_gives_empty_report():
    config = parse_config(config_text("shoot", grid="grid:\n  sigma: []\n"))
    report = run_experiment(config)
    assert report.records == []
    assert report.passed
    assert render_csv(report) == "p,sigma,R,beta_star,r0,lambda,u0,residual,root_count\n"


def test_grid_order():
    config = ExperimentConfig(kind="shoot", p=(2.0, 3.0), sigma=(0.0, 1.0), R=(1.0,))
    points = grid_points(config)
    assert [(point["p"], point["sigma"]) for point in points] == [
        (2.0, 0.0), (2.0, 1.0), (3.0, 0.0), (3.0, 1.0),
    ]
    sweep = ExperimentConfig(kind="sweep-sigma", p=(3.0,), sigma=(0.0, 1.0), R=(1.0, 2.0))
    assert [(point["R"], point["sigma"]) for point in grid_points(sweep)] == [
        (1.0, 0.0), (1.0, 1.0), (2.0, 0.0), (2.0, 1.0),
    ]


def test_verify_points_cover_every_check():
    config = ExperimentConfig(kind="verify-all", solver=dict(ExperimentConfig(kind="shoot").solver, sources=1))
    points = grid_points(config)
    assert {point["check"] for point in points} == set(VERIFY)
    assert len(points) == 46


def test_shoot_record(tmp_path):
    config = parse_config(config_text("shoot", grid="grid:\n  p: 3\n  sigma: 1\n", output="  data: true\n"))
    report = run_experiment(config)
    record = report.records[0]
    assert record.error is None
    assert record.values["root_count"] == 1
    assert record.checks == {"residual": True, "unique_root": True, "monotone": True}
    assert "profile_000.csv" in report.artifacts
    assert set(report.timings) == {"points", "total"}


def test_repeated_runs_render_identically():
    config = parse_config(config_text("shoot", grid="grid:\n  p: 3\n  sigma: [1, 2]\n"))
    assert render_csv(run_experiment(config)) == render_csv(run_experiment(config))


def test_failing_point_does_not_stop_the_run(small_solver):
    config = parse_config(config_text("limacon", grid="grid:\n  a: [0.0, 0.45]\n  p: 3\n  sigma: 1\n",
                                      solver=small_solver))
    report = run_experiment(config)
    first, second = report.records
    assert first.error is None
    assert first.values["convex"] is True
    assert second.error.startswith("RangeError")
    assert second.values["convex"] is False
    assert second.values["min_kappa"] < 0.0
    assert report.failures() == [second]


def test_talenti_sources(small_solver):
    config = parse_config(config_text("talenti", solver=small_solver))
    report = run_experiment(config)
    labels = [record.values["label"] for record in report.records]
    assert labels == ["constant", "random"]
    assert report.records[0].checks["equality"]
    assert report.records[0].checks["comparison"]


def test_parallel_run_matches_serial(small_solver):
    config = parse_config(config_text("steklov-eig", solver=small_solver))
    serial = run_experiment(config)
    parallel = run_experiment(config.with_overrides(jobs=2))
    assert parallel == serial


def test_run_point_captures_errors():
    config = ExperimentConfig(kind="shoot", data=False)
    rows, artifacts, seconds = run_point((config, 0, {"p": 3.0, "sigma": 1.0, "R": -1.0}))
    values, checks, error = rows[0]
    assert error.startswith("InvalidInputError")
    assert artifacts == {}
    assert seconds >= 0.0


def test_limacon_geometry_checks_pass():
    rows = VERIFY["limacon-geometry"](ExperimentConfig(kind="verify-all"))
    assert all(row["passed"] for row in rows)


# -----------------------------------------------------------------------------
# Sources
# -----------------------------------------------------------------------------

def test_smooth_source_is_seeded_and_positive():
    first = SmoothSource.random(7, 3)
    assert first == SmoothSource.random(7, 3)
    assert first != SmoothSource.random(7, 4)
    r, theta = np.meshgrid(np.linspace(0.0, 1.0, 9), np.linspace(0.0, 6.0, 7))
    assert np.all(first(r, theta) > 0.0)


def test_comparison_sources():
    label, source = comparison_source(7, 0)
    assert label == "constant"
    assert np.all(source(np.array([0.0, 0.5]), 0.0) == 1.0)
    assert comparison_source(7, 2)[0] == "random"


@pytest.mark.slow
def test_sweep_sigma_finds_unique_roots():
    config = parse_config(config_text("sweep-sigma", grid="grid:\n  p: 3\n  sigma: [-0.9, 0, 1, 2]\n"))
    report = run_experiment(config)
    assert len(report.records) == 4
    assert [record.values["root_count"] for record in report.records] == [1, 1, 1, 1]
    assert report.records[2].values["lap_R"] == pytest.approx(0.0, abs=1e-6)


def test_limacon_run_carries_curve_family():
    report = run_experiment(ExperimentConfig(kind="limacon", a=(), data=True))
    assert report.curve_family == CURVE_FAMILY
    assert run_experiment(ExperimentConfig(kind="limacon", a=(), data=False)).curve_family == ()


@pytest.mark.slow
def test_sigma_trend_check_uses_ground_states(small_solver):
    config = parse_config(config_text("verify-all", solver=small_solver))
    rows = VERIFY["sigma-trend"](config)
    assert [row["check"] for row in rows[:2]] == [
        "p=0.5: max |u| decreasing in sigma", "p=3: energy norm increasing in sigma",
    ]
    assert all(row["passed"] for row in rows)
