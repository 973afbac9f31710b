from __future__ import annotations

import argparse
from pathlib import Path

import pandas as pd
import scipy.fft

from bounds.analyticity import HOLDER_CONVENTION, BoundConfig, bound_report, generating_bound_curve
from bounds.holder import holder_norm
from bounds.polynomial import zeta2_curve
from core.config import RunConfig
from experiments.presets import load_initial_field
from fields.operators import curl
from interfaces.cli.commands import add_common_args, run_config_from_args, setup_cli_logger
from interfaces.cli.output import CommandResult, dumps, write_csv
from taylor.series import build_series

BOUNDS_CSV = "bounds.csv"
CURVE_CSV = "zeta2_curve.csv"
GENERATING_CSV = "generating_bound.csv"


def cmd_bounds(cfg: RunConfig, *, curve: bool = False, generating: bool = False) -> CommandResult:
    """Q_c, t_c for the configured theta and the measured (or forced) vorticity norm."""
    bcfg = BoundConfig.resolve(cfg.gamma, cfg.theta, cfg.theta_tilde)
    out_dir = Path(cfg.output_dir)
    fp = cfg.fingerprint()

    v0 = None
    if cfg.omega_norm is None:
        v0 = load_initial_field(cfg)
        omega_norm = holder_norm(curl(v0), bcfg.gamma, radius_fraction=cfg.holder_radius)
    else:
        omega_norm = float(cfg.omega_norm)

    report = bound_report(omega_norm, bcfg)
    row = report.as_row()
    row["holder_convention"] = HOLDER_CONVENTION
    csv_path = write_csv(pd.DataFrame([row]), out_dir / BOUNDS_CSV, fp)
    written = [str(csv_path)]

    if curve:
        written.append(str(write_csv(zeta2_curve(bcfg.theta, cfg.curve_samples), out_dir / CURVE_CSV, fp)))

    if generating:
        if v0 is None:
            v0 = load_initial_field(cfg)
        series = build_series(v0, cfg.order, solve_tol=cfg.solve_tol, holder_gamma=bcfg.gamma, holder_radius=cfg.holder_radius)
        df = generating_bound_curve(series, bcfg, samples=cfg.curve_samples, omega_norm=omega_norm)
        written.append(str(write_csv(df, out_dir / GENERATING_CSV, fp)))

    payload = {
        "gamma": bcfg.gamma,
        "theta": bcfg.theta,
        "theta_heuristic": bcfg.theta_heuristic,
        "theta_tilde": bcfg.theta_tilde,
        "holder_convention": HOLDER_CONVENTION,
        "omega_norm": omega_norm,
        "Q_c": report.q_c,
        "t_c": report.t_c,
        "csv": written,
        "config_sha256": fp,
    }
    return CommandResult(exit_code=0, output=dumps(payload))


def _bounds(args: argparse.Namespace) -> CommandResult:
    cfg = run_config_from_args(args, extra=("omega_norm",))
    logger = setup_cli_logger(args, cfg)
    with scipy.fft.set_workers(cfg.threads):
        res = cmd_bounds(cfg, curve=bool(args.curve), generating=bool(args.generating))
    logger.info("bounds: OK")
    return res


def register_bounds_commands(subparsers) -> None:
    p = subparsers.add_parser("bounds", help="Critical Q_c and guaranteed analyticity time t_c")
    add_common_args(p)
    p.add_argument("--omega-norm", dest="omega_norm", type=float, default=None, help="use this |omega0| instead of measuring it")
    p.add_argument("--curve", action="store_true", help=f"also write the zeta roots over [0, Q_c] to {CURVE_CSV}")
    p.add_argument("--generating", action="store_true", help=f"also write generating-function margins to {GENERATING_CSV}")
    p.set_defaults(func=_bounds)
