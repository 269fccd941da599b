"""
cli.py

Main entry-point.

• `run`        – one experiment from a config file and/or flags, trace to CSV/JSON
• `suppress`   – the channel-suppression ladder (full, no-x, no-x-y, …) on one frozen noise stream
• `show-state` – Dirac form and amplitude table of the noiseless algorithm output
• `draw`       – ASCII circuit of the experiment schedule

Exit status: 0 on success, 1 on configuration errors, 2 on numerical failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from config import get_settings, load_experiment_config
from experiment_flow.runner import noiseless_output, run_experiment, run_suppression_ladder
from experiment_flow.schedules import build_schedule
from utils.displays import amplitude_table, ascii_circuit, dirac_form
from utils.errors import ConfigError, SimulationError
from utils.logging_config import setup_development_logging, setup_production_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as ConfigError instead of exiting."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _experiment_options() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value experiment file")
    common.add_argument("--experiment", choices=["mv1", "mv2", "mvn", "custom"])
    common.add_argument("--nq", type=int, help="qubit count (mvn, custom)")
    common.add_argument("--circuit", help='custom circuit, e.g. "h:1; noise; cnot:1,2"')
    common.add_argument("--steps", type=int, help="total schedule steps")
    common.add_argument("--paths", type=int, help="number of noisy paths")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", metavar="PATH", help="trace output path")
    common.add_argument("--suppress", metavar="CHANNELS", help="comma list of x,y,z,general")
    common.add_argument("--workers", type=int, help="threads for per-path conjugations")
    common.add_argument("--log-dir", help="directory for log files")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging to console and file")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _experiment_options()
    parser = _Parser(
        prog="mvsim",
        description="Strided-kernel quantum simulator with a multiverse noise ensemble.",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True
    commands.add_parser("run", parents=[common], help="run an experiment and write its metrics trace")
    commands.add_parser("suppress", parents=[common], help="rerun with noise channels turned off one by one")
    commands.add_parser("show-state", parents=[common], help="print the noiseless output state")
    commands.add_parser("draw", parents=[common], help="print the circuit")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    keys = ("experiment", "nq", "circuit", "steps", "paths", "seed", "format", "out", "suppress", "workers")
    return {key: getattr(args, key) for key in keys}


def _configure_logging(args: argparse.Namespace) -> None:
    app_settings = get_settings()
    log_dir = args.log_dir or app_settings.log_dir
    if args.verbose:
        setup_development_logging(log_dir=log_dir)
    else:
        setup_production_logging(
            log_dir=log_dir,
            log_level=app_settings.numeric_log_level,
            console_output=app_settings.console_log,
        )


def _dispatch(args: argparse.Namespace) -> None:
    app_settings = get_settings()
    config = load_experiment_config(args.config, _overrides(args), app_settings)

    if args.command == "run":
        report = run_experiment(config, app_settings)
        print(report.path)
    elif args.command == "suppress":
        for report in run_suppression_ladder(config, app_settings):
            last = report.result.trace.records[-1]
            print(f"{report.label}\t{last.fidelity:.6g}\t{report.path}")
    elif args.command == "show-state":
        _, psi = noiseless_output(config)
        print(dirac_form(psi, app_settings.display_tolerance))
        print()
        print(amplitude_table(psi, app_settings.display_tolerance))
    elif args.command == "draw":
        nq, schedule = build_schedule(config)
        print(ascii_circuit(schedule, nq))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    _configure_logging(args)
    try:
        _dispatch(args)
    except ConfigError as e:
        logger.error(f"configuration error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as e:
        logger.exception("simulation failed")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
