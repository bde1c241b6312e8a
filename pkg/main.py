"""
Main module for the plate lab.

This module parses the command line, loads or builds the experiment
config, runs it and writes the report. Exit codes: 0 when every check
passed, 1 when any check failed, 2 on a configuration error.
"""

import sys
import os
import argparse
import logging

# Add project root to sys.path once
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from constants import EXPERIMENT_KINDS, OUT_ENV_VAR, EXIT_OK, EXIT_FAILED, EXIT_CONFIG
from exceptions import ConfigParseError, ConfigValidationError, PlateLabError
from lab.config import ExperimentConfig, parse_config, FORMATS
from lab.runner import run_experiment
from lab.report import write_report

logger = logging.getLogger("platelab")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="platelab",
        description="Numerical lab for the semilinear biharmonic Steklov problem.",
    )
    parser.add_argument("kind", choices=EXPERIMENT_KINDS, help="Experiment to run")
    parser.add_argument("--config", metavar="PATH", help="YAML experiment file")
    parser.add_argument("--out", metavar="DIR", help=f"Output directory (overridden by ${OUT_ENV_VAR})")
    parser.add_argument("--seed", type=int, help="Seed for every random draw")
    parser.add_argument("--format", choices=FORMATS, help="Report format")
    parser.add_argument("--jobs", type=int, help="Worker processes for grid points")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only")
    return parser


def load_config(args):
    """
    Config from --config (if any) with the subcommand and flags applied.

    Raises:
        ConfigParseError, ConfigValidationError: Bad file or flags.
    """
    config = parse_config(args.config) if args.config else ExperimentConfig(kind=args.kind)
    if args.jobs is not None and args.jobs < 1:
        raise ConfigValidationError([("--jobs", f"positive integer required, got {args.jobs}")])
    if args.seed is not None and args.seed < 0:
        raise ConfigValidationError([("--seed", f"non-negative integer required, got {args.seed}")])
    out_dir = os.environ.get(OUT_ENV_VAR) or args.out
    return config.with_overrides(
        kind=args.kind, out_dir=out_dir, seed=args.seed, format=args.format, jobs=args.jobs,
    )


def main(argv=None):
    """
    Run one experiment from the command line.

    Args:
        argv (list, optional): Arguments without the program name.

    Returns:
        int: Exit code.
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        config = load_config(args)
    except (ConfigParseError, ConfigValidationError) as error:
        logger.error("configuration error: %s", error)
        return EXIT_CONFIG

    try:
        report = run_experiment(config)
        paths = write_report(report, config.out_dir, config.format)
    except OSError as error:
        logger.error("could not write the report: %s", error)
        return EXIT_FAILED
    except PlateLabError as error:
        logger.error("%s failed: %s", config.kind, error)
        return EXIT_FAILED

    failures = report.failures()
    for record in failures:
        logger.warning("record %d failed: %s", record.index, record.error or record.checks)
    logger.info("%d records, %d failed; wrote %d files to %s",
                len(report.records), len(failures), len(paths), config.out_dir)
    return EXIT_FAILED if failures else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
