"""
BASE CLI COMMANDS

Shared flag handling for every subcommand plus `doctor`.
Solver modules are imported by the subcommand modules only.
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Any

from core.config import AppConfig, RunConfig, load_config, load_run_config
from core.dependencies import check_dependencies
from core.exceptions import ConfigError
from core.logging import setup_logger
from interfaces.cli.output import CommandResult, dumps

# flag dest -> RunConfig key
COMMON_OVERRIDES = ("preset", "field_file", "n", "order", "gamma", "theta", "output_dir", "seed", "threads")


def add_common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="YAML config with app: and run: sections")
    p.add_argument("--preset", default=None, help="constant | shear | taylor-green | abc | random")
    p.add_argument("--field-file", dest="field_file", default=None, help="initial velocity in the binary field format")
    p.add_argument("--n", type=int, default=None, help="grid points per axis")
    p.add_argument("--order", type=int, default=None, help="Taylor order S")
    p.add_argument("--gamma", type=float, default=None, help="Hoelder exponent in (0, 1)")
    p.add_argument("--theta", type=float, default=None, help="bound constant; default 1/gamma")
    p.add_argument("--output-dir", dest="output_dir", default=None)
    p.add_argument("--seed", type=int, default=None, help="seed for the random preset and trajectory seeds")
    p.add_argument("--threads", type=int, default=None, help="FFT worker threads")


def run_config_from_args(args: argparse.Namespace, extra: tuple[str, ...] = ()) -> RunConfig:
    overrides: dict[str, Any] = {k: getattr(args, k, None) for k in COMMON_OVERRIDES + extra}
    return load_run_config(getattr(args, "config", None), overrides)


def app_config_from_args(args: argparse.Namespace, cfg: RunConfig) -> AppConfig:
    path = getattr(args, "config", None)
    if path is not None:
        try:
            return load_config(path)
        except ConfigError:
            # a config with only a run: section falls back to the defaults below
            pass
    return AppConfig(
        env="dev",
        log_level="INFO",
        log_dir=Path(cfg.output_dir) / "logs",
        log_file="app.log",
        json_log_file="app.json.log",
        console_log_format="text",
        enable_json_file_log=False,
    )


def setup_cli_logger(args: argparse.Namespace, cfg: RunConfig) -> logging.Logger:
    return setup_logger(app_config_from_args(args, cfg))


def register_base_commands(subparsers) -> None:
    p = subparsers.add_parser(
        "doctor",
        help="Check that the numerical stack imports",
    )
    p.set_defaults(func=_doctor)


def doctor_command() -> CommandResult:
    statuses = check_dependencies()
    payload = {s.name: {"ok": s.ok, "details": s.details} for s in statuses}
    ok = all(s.ok for s in statuses)
    return CommandResult(exit_code=0 if ok else 2, output=dumps({"ok": ok, "dependencies": payload}))


def _doctor(args: argparse.Namespace) -> CommandResult:
    return doctor_command()
