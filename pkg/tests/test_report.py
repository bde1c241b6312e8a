"""Tests for report records, CSV/JSON rendering and file output."""

import csv
import hashlib
import json
import math
import os

import numpy as np
import pytest

from exceptions import InvalidInputError
from lab.export import write_columns, write_curve_family, curve_name
from lab.report import render_csv, render_checks_csv, render_json, parse_json, read_report, write_report
from models.report import RunRecord, RunReport, COLUMNS

SHOOT_HEADER = "p,sigma,R,beta_star,r0,lambda,u0,residual,root_count"


def shoot_report():
    values = {
        "p": 3.0, "sigma": 1.0, "R": 1.0, "beta_star": np.float64(-12.5), "r0": 2.5,
        "lambda": 2.5, "u0": 6.25, "residual": 1e-13, "root_count": np.int64(1),
    }
    records = [
        RunRecord("shoot", 0, values, {"residual": np.bool_(True)}, None, "abc"),
        RunRecord("shoot", 1, {"p": 3.0, "sigma": 50.0, "R": 1.0}, {}, "NoSolutionError: none", "abc"),
    ]
    return RunReport("shoot", "abc", records)


def test_record_values_are_plain():
    record = shoot_report().records[0]
    assert type(record.values["beta_star"]) is float
    assert type(record.values["root_count"]) is int
    assert record.checks == {"residual": True}
    assert record.passed


def test_nan_becomes_none():
    record = RunRecord("shoot", 0, {"u0": float("nan")})
    assert record.values["u0"] is None


def test_failed_record():
    report = shoot_report()
    assert not report.records[1].passed
    assert not report.passed
    assert [record.index for record in report.failures()] == [1]


def test_every_kind_has_columns():
    for kind in ("shoot", "sweep-sigma", "ground-state", "steklov-eig", "talenti", "limacon", "verify-all"):
        assert COLUMNS[kind]
    assert ",".join(COLUMNS["shoot"]) == SHOOT_HEADER
    assert COLUMNS["sweep-sigma"][:len(COLUMNS["shoot"])] == COLUMNS["shoot"]


def test_csv_header_and_rows():
    lines = render_csv(shoot_report()).splitlines()
    assert lines[0] == SHOOT_HEADER
    assert lines[1] == "3.0,1.0,1.0,-12.5,2.5,2.5,6.25,1e-13,1"
    assert lines[2] == "3.0,50.0,1.0,,,,,,"


def test_empty_report_has_header_only():
    assert render_csv(RunReport("shoot", "abc")) == SHOOT_HEADER + "\n"


def test_checks_csv_lists_errors():
    rows = list(csv.reader(render_checks_csv(shoot_report()).splitlines()))
    assert rows[0] == ["index", "check", "passed", "error"]
    assert rows[1] == ["0", "residual", "True", ""]
    assert rows[2] == ["1", "error", "False", "NoSolutionError: none"]


def test_json_roundtrip():
    report = shoot_report()
    assert parse_json(render_json(report)) == report


def test_json_carries_columns_and_schema():
    document = json.loads(render_json(shoot_report()))
    assert document["columns"] == SHOOT_HEADER.split(",")
    assert document["schema_version"] == 1
    assert document["records"][1]["passed"] is False


# -----------------------------------------------------------------------------
# Files
# -----------------------------------------------------------------------------

def test_write_csv_report_with_manifest(tmp_path):
    report = shoot_report()
    report.artifacts["profile_000.csv"] = {"r": [0.0, 1.0], "u": [1.0, 0.0]}
    paths = write_report(report, str(tmp_path), "csv")
    names = [os.path.basename(path) for path in paths]
    assert names == ["report.csv", "checks.csv", "profile_000.csv", "manifest.json"]

    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["config_hash"] == "abc"
    assert manifest["passed"] is False
    entry = manifest["artifacts"][2]
    digest = hashlib.sha256((tmp_path / "profile_000.csv").read_bytes()).hexdigest()
    assert entry == {"name": "profile_000.csv", "sha256": digest, "config_hash": "abc"}
    assert (tmp_path / "profile_000.csv").read_text() == "r,u\n0.0,1.0\n1.0,0.0\n"


def test_write_json_report(tmp_path):
    report = shoot_report()
    paths = write_report(report, str(tmp_path / "nested"), "json")
    assert os.path.basename(paths[0]) == "report.json"
    assert read_report(paths[0]) == report


def test_write_report_rejects_unknown_format(tmp_path):
    with pytest.raises(InvalidInputError):
        write_report(shoot_report(), str(tmp_path), "xml")


def test_unwritable_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError):
        write_report(shoot_report(), str(blocker / "out"), "csv")


def test_columns_must_have_equal_length(tmp_path):
    with pytest.raises(InvalidInputError):
        write_columns(str(tmp_path / "bad.csv"), {"a": [1, 2], "b": [1]})


def test_curve_family_files(tmp_path):
    family = (0.0, 0.25, math.sqrt(6.0) / 6.0, 0.5)
    paths = write_curve_family(str(tmp_path), family, 9)
    assert len(paths) == 4
    assert os.path.basename(paths[0]) == curve_name(0.0) == "boundary_a0.000000.csv"
    rows = list(csv.reader((tmp_path / curve_name(0.5)).read_text().splitlines()))
    assert rows[0] == ["phi", "x", "y", "kappa"]
    assert len(rows) == 10


def test_curve_family_is_written_with_the_report(tmp_path):
    report = RunReport("limacon", "abc", [], curve_family=(0.0, 0.25))
    paths = write_report(report, str(tmp_path), "csv")
    names = [os.path.basename(path) for path in paths]
    assert names == ["report.csv", "checks.csv", curve_name(0.0), curve_name(0.25), "manifest.json"]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert [entry["name"] for entry in manifest["artifacts"]][2:] == [curve_name(0.0), curve_name(0.25)]
