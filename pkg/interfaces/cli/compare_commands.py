from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np
import scipy.fft

from core.config import RunConfig
from experiments.presets import load_initial_field
from interfaces.cli.commands import add_common_args, run_config_from_args, setup_cli_logger
from interfaces.cli.output import CommandResult, dumps, write_csv
from oracle.euler import euler_solve
from oracle.trajectories import compare_trajectories, integrate_trajectories, seed_points, series_trajectories
from taylor.radius import MIN_ORDER, estimate_radius
from taylor.series import build_series

COMPARE_CSV = "compare.csv"
TAYLOR_CSV = "trajectories_taylor.csv"
ORACLE_CSV = "trajectories_oracle.csv"
SAMPLE_TIMES = 11


def cmd_compare(cfg: RunConfig) -> CommandResult:
    """Taylor-series particle paths against the Eulerian RK4 oracle up to compare_time."""
    out_dir = Path(cfg.output_dir)
    fp = cfg.fingerprint()
    v0 = load_initial_field(cfg)
    series = build_series(v0, cfg.order, solve_tol=cfg.solve_tol)
    radius = estimate_radius(series) if series.order >= MIN_ORDER else None

    seeds = seed_points(cfg.seeds, cfg.seed)
    times = np.linspace(0.0, cfg.compare_time, SAMPLE_TIMES)
    history = euler_solve(v0, cfg.compare_time, cfg.dt)
    oracle = integrate_trajectories(history, seeds, times)
    taylor = series_trajectories(series, seeds, times)
    cmp = compare_trajectories(taylor, oracle)

    written = [
        str(write_csv(cmp.frame(), out_dir / COMPARE_CSV, fp)),
        str(write_csv(taylor.frame(), out_dir / TAYLOR_CSV, fp)),
        str(write_csv(oracle.frame(), out_dir / ORACLE_CSV, fp)),
    ]
    payload = {
        "time": cfg.compare_time,
        "seeds": cfg.seeds,
        "order": series.order,
        "oracle_steps": int(history.times.size - 1),
        "radius_estimate": radius,
        "max_error": cmp.max_error,
        "max_relative_error": cmp.max_relative_error,
        "csv": written,
        "config_sha256": fp,
    }
    return CommandResult(exit_code=0, output=dumps(payload))


def _compare(args: argparse.Namespace) -> CommandResult:
    cfg = run_config_from_args(args, extra=("compare_time", "dt"))
    setup_cli_logger(args, cfg)
    with scipy.fft.set_workers(cfg.threads):
        return cmd_compare(cfg)


def register_compare_commands(subparsers) -> None:
    p = subparsers.add_parser("compare", help="Taylor-series trajectories against the Eulerian oracle")
    add_common_args(p)
    p.add_argument("--time", dest="compare_time", type=float, default=None, help="comparison horizon")
    p.add_argument("--dt", type=float, default=None, help="oracle time step; default from the stability bound")
    p.set_defaults(func=_compare)
