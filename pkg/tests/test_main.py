"""Tests for the command-line entry point."""

import json

import pytest

from constants import EXIT_OK, EXIT_FAILED, EXIT_CONFIG, OUT_ENV_VAR
from main import build_parser, main

from conftest import write_yaml


@pytest.fixture(autouse=True)
def no_out_override(monkeypatch):
    monkeypatch.delenv(OUT_ENV_VAR, raising=False)


def steklov_config(tmp_path, small_solver):
    return write_yaml(tmp_path, "experiment:\n  kind: steklov-eig\n" + small_solver)


def test_parser_rejects_unknown_kind():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["bake"])


def test_parser_rejects_verbose_and_quiet():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["shoot", "-v", "-q"])


def test_successful_run(tmp_path, small_solver):
    out = tmp_path / "out"
    code = main(["steklov-eig", "--config", steklov_config(tmp_path, small_solver), "--out", str(out), "-q"])
    assert code == EXIT_OK
    assert (out / "report.csv").read_text().splitlines()[0] == "R,a,m,delta,delta_minus,nu_star"
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["kind"] == "steklov-eig"
    assert manifest["passed"] is True


def test_json_format_flag(tmp_path, small_solver):
    out = tmp_path / "out"
    code = main(["steklov-eig", "--config", steklov_config(tmp_path, small_solver),
                 "--out", str(out), "--format", "json", "-q"])
    assert code == EXIT_OK
    assert json.loads((out / "report.json").read_text())["kind"] == "steklov-eig"


def test_environment_overrides_out(tmp_path, small_solver, monkeypatch):
    target = tmp_path / "from_env"
    monkeypatch.setenv(OUT_ENV_VAR, str(target))
    code = main(["steklov-eig", "--config", steklov_config(tmp_path, small_solver),
                 "--out", str(tmp_path / "ignored"), "-q"])
    assert code == EXIT_OK
    assert (target / "manifest.json").exists()
    assert not (tmp_path / "ignored").exists()


def test_subcommand_wins_over_file_kind(tmp_path):
    path = write_yaml(tmp_path, "experiment:\n  kind: talenti\ngrid:\n  sigma: []\n")
    out = tmp_path / "out"
    assert main(["shoot", "--config", path, "--out", str(out), "-q"]) == EXIT_OK
    assert (out / "report.csv").read_text() == "p,sigma,R,beta_star,r0,lambda,u0,residual,root_count\n"


def test_invalid_config_exits_with_two(tmp_path):
    path = write_yaml(tmp_path, "experiment:\n  kind: shoot\ngrid:\n  sigma: -1\n")
    assert main(["shoot", "--config", path, "--out", str(tmp_path / "out"), "-q"]) == EXIT_CONFIG
    assert not (tmp_path / "out").exists()


def test_malformed_config_exits_with_two(tmp_path):
    path = write_yaml(tmp_path, "experiment: [\n")
    assert main(["shoot", "--config", path, "-q"]) == EXIT_CONFIG


def test_bad_jobs_flag_exits_with_two(tmp_path):
    assert main(["shoot", "--jobs", "0", "--out", str(tmp_path), "-q"]) == EXIT_CONFIG


def test_failed_check_exits_with_one(tmp_path, small_solver):
    path = write_yaml(tmp_path, "experiment:\n  kind: limacon\ngrid:\n  a: 0.45\n" + small_solver)
    out = tmp_path / "out"
    assert main(["limacon", "--config", path, "--out", str(out), "-q"]) == EXIT_FAILED
    assert "RangeError" in (out / "checks.csv").read_text()


def test_unwritable_output_exits_with_one(tmp_path, small_solver):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = main(["steklov-eig", "--config", steklov_config(tmp_path, small_solver),
                 "--out", str(blocker / "out"), "-q"])
    assert code == EXIT_FAILED
