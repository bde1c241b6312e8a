"""
Report emission.

report.csv holds the kind's columns in fixed order, checks.csv the pass/fail
flags per record, and manifest.json lists every written file with its
sha256 and the config hash. Nothing time-dependent is written, so equal
configs give byte-identical files.
"""

import sys
import os
import io
import csv
import json
import hashlib
import logging

# Add project root to sys.path to ensure imports work correctly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exceptions import InvalidInputError
from lab.export import write_artifacts, write_curve_family
from models.report import RunReport

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("csv", "json")
MANIFEST = "manifest.json"


def _cell(value):
    return "" if value is None else value


def render_csv(report):
    """report.csv content: header plus one row per record."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.columns)
    for record in report.records:
        writer.writerow([_cell(value) for value in record.row(report.columns)])
    return buffer.getvalue()


def render_checks_csv(report):
    """checks.csv content: one row per (record, check), plus captured errors."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["index", "check", "passed", "error"])
    for record in report.records:
        for name, passed in record.checks.items():
            writer.writerow([record.index, name, passed, ""])
        if record.error is not None:
            writer.writerow([record.index, "error", False, record.error])
    return buffer.getvalue()


def render_json(report):
    return json.dumps(report.as_dict(), indent=2) + "\n"


def parse_json(text):
    """Inverse of render_json."""
    return RunReport.from_dict(json.loads(text))


def read_report(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_json(handle.read())


def _digest(path):
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def _write_text(path, text):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write(text)
    return path


def write_report(report, out_dir, fmt="csv"):
    """
    Write the report, its data files and the manifest.

    Args:
        report (RunReport): Report to write.
        out_dir (str): Output directory, created if missing.
        fmt (str): "csv" or "json".

    Returns:
        list: Every written path, manifest last.

    Raises:
        OSError: Unwritable directory or file; the message carries the path.
    """
    if fmt not in REPORT_FORMATS:
        raise InvalidInputError(f"report format must be csv or json, got {fmt!r}")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    if fmt == "csv":
        paths.append(_write_text(os.path.join(out_dir, "report.csv"), render_csv(report)))
        paths.append(_write_text(os.path.join(out_dir, "checks.csv"), render_checks_csv(report)))
    else:
        paths.append(_write_text(os.path.join(out_dir, "report.json"), render_json(report)))
    paths.extend(write_artifacts(out_dir, report.artifacts))
    if report.curve_family:
        paths.extend(write_curve_family(out_dir, report.curve_family))

    manifest = {
        "schema_version": report.schema_version,
        "kind": report.kind,
        "config_hash": report.config_hash,
        "passed": report.passed,
        "artifacts": [
            {
                "name": os.path.basename(path),
                "sha256": _digest(path),
                "config_hash": report.config_hash,
            }
            for path in paths
        ],
    }
    paths.append(_write_text(os.path.join(out_dir, MANIFEST), json.dumps(manifest, indent=2) + "\n"))
    logger.info("wrote %d files to %s", len(paths), out_dir)
    return paths
