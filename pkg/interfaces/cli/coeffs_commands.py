from __future__ import annotations

import argparse
from pathlib import Path

import scipy.fft

from core.config import RunConfig
from core.fingerprint import sha256_file
from experiments.presets import load_initial_field
from fields.io import save_field
from interfaces.cli.commands import add_common_args, run_config_from_args, setup_cli_logger
from interfaces.cli.output import CommandResult, dumps, write_csv
from taylor.radius import MIN_ORDER, estimate_radius
from taylor.report import coefficient_table
from taylor.series import build_series

COEFFS_CSV = "coeffs.csv"


def cmd_coeffs(cfg: RunConfig, *, dump: bool = False) -> CommandResult:
    v0 = load_initial_field(cfg)
    series = build_series(v0, cfg.order, solve_tol=cfg.solve_tol)
    table = coefficient_table(series)
    out_dir = Path(cfg.output_dir)
    csv_path = write_csv(table, out_dir / COEFFS_CSV, cfg.fingerprint())

    dumps_written: dict[str, str] = {}
    if dump:
        for s in range(1, series.order + 1):
            p = save_field(series.xi(s), out_dir / "coeffs" / f"xi_{s:03d}.bin")
            dumps_written[p.name] = sha256_file(p)

    radius = estimate_radius(series) if series.order >= MIN_ORDER else None
    payload = {
        "preset": cfg.preset if cfg.field_file is None else str(cfg.field_file),
        "n": series.grid.n,
        "order": series.order,
        "radius_estimate": radius,
        "csv": str(csv_path),
        "dumps": dumps_written,
        "config_sha256": cfg.fingerprint(),
    }
    return CommandResult(exit_code=0, output=dumps(payload))


def _coeffs(args: argparse.Namespace) -> CommandResult:
    cfg = run_config_from_args(args)
    logger = setup_cli_logger(args, cfg)
    with scipy.fft.set_workers(cfg.threads):
        res = cmd_coeffs(cfg, dump=bool(args.dump))
    logger.info("coeffs: OK")
    return res


def register_coeffs_commands(subparsers) -> None:
    p = subparsers.add_parser("coeffs", help="Compute Taylor coefficients and their norm table")
    add_common_args(p)
    p.add_argument("--dump", action="store_true", help="write every xi^(s) in the binary field format")
    p.set_defaults(func=_coeffs)
