from __future__ import annotations

import argparse
from pathlib import Path

import scipy.fft

from core.config import RunConfig
from experiments.verify_suite import run_verify_suite
from interfaces.cli.commands import add_common_args, run_config_from_args, setup_cli_logger
from interfaces.cli.output import CommandResult, dumps, write_csv

VERIFY_CSV = "verify.csv"


def cmd_verify(cfg: RunConfig) -> CommandResult:
    """Exit code 0 iff every check of the invariant suite passes, else 1."""
    res = run_verify_suite(cfg)
    csv_path = write_csv(res.frame(), Path(cfg.output_dir) / VERIFY_CSV, cfg.fingerprint())
    payload = {
        "ok": res.ok,
        "checks": len(res.checks),
        "failed": res.failed,
        "csv": str(csv_path),
        "config_sha256": cfg.fingerprint(),
    }
    return CommandResult(exit_code=0 if res.ok else 1, output=dumps(payload))


def _verify(args: argparse.Namespace) -> CommandResult:
    cfg = run_config_from_args(args)
    setup_cli_logger(args, cfg)
    with scipy.fft.set_workers(cfg.threads):
        return cmd_verify(cfg)


def register_verify_commands(subparsers) -> None:
    p = subparsers.add_parser("verify", help="Run the invariant suite; nonzero exit on any failure")
    add_common_args(p)
    p.set_defaults(func=_verify)
