from __future__ import annotations

import argparse
import math
from pathlib import Path

import pandas as pd
import scipy.fft

from bounds.analyticity import BoundConfig
from core.config import RunConfig
from core.logging import get_logger
from experiments.presets import load_initial_field
from interfaces.cli.commands import add_common_args, run_config_from_args, setup_cli_logger
from interfaces.cli.output import CommandResult, dumps, write_csv
from monitoring.events import append_event, events_path
from monitoring.metrics import metrics_path, write_metrics
from stepper.checkpoint import save_checkpoint
from stepper.state import FlowState, initial_state
from stepper.stepper import advance

logger = get_logger(__name__)

RUN_CSV = "run.csv"


def _row(state: FlowState, h: float) -> dict:
    row = {"step": state.step_count, "time": state.time, "h": h}
    row.update(state.diagnostics.as_dict())
    return row


def cmd_run(cfg: RunConfig) -> CommandResult:
    out_dir = Path(cfg.output_dir)
    bcfg = BoundConfig.resolve(cfg.gamma, cfg.theta, cfg.theta_tilde)
    state = initial_state(load_initial_field(cfg))
    ev_path = events_path(out_dir)
    m_path = metrics_path(out_dir)
    written: list[str] = []
    prev_time = [state.time]

    def on_step(s: FlowState) -> None:
        h = s.time - prev_time[0]
        prev_time[0] = s.time
        append_event(kind="step", payload=_row(s, h), path=ev_path)
        write_metrics(s.diagnostics.as_dict() | {"time": s.time, "step": s.step_count}, path=m_path)
        if cfg.checkpoint_every and s.step_count % cfg.checkpoint_every == 0:
            written.extend(str(p) for p in save_checkpoint(s, out_dir / "checkpoints"))

    history = advance(
        state,
        steps=cfg.steps,
        order=cfg.order,
        safety=cfg.safety,
        h_max=cfg.h_max,
        bound_config=bcfg,
        solve_tol=cfg.solve_tol,
        on_step=on_step,
    )

    rows = [_row(history[0], 0.0)]
    for a, b in zip(history, history[1:]):
        rows.append(_row(b, b.time - a.time))
    csv_path = write_csv(pd.DataFrame(rows), out_dir / RUN_CSV, cfg.fingerprint())

    e0 = history[0].energy
    e1 = history[-1].energy
    drift = abs(e1 - e0) / e0 if e0 > 0.0 else abs(e1 - e0)
    payload = {
        "steps": len(history) - 1,
        "time": history[-1].time,
        "energy_initial": e0,
        "energy_final": e1,
        "energy_drift": drift,
        "max_divergence": max(s.diagnostics.divergence for s in history),
        "min_radius_estimate": min((s.diagnostics.radius_estimate for s in history[1:]), default=math.inf),
        "csv": str(csv_path),
        "checkpoints": written,
        "config_sha256": cfg.fingerprint(),
    }
    logger.info("run: %d steps to t=%.6f, energy drift %.3e", len(history) - 1, history[-1].time, drift)
    return CommandResult(exit_code=0, output=dumps(payload))


def _run(args: argparse.Namespace) -> CommandResult:
    cfg = run_config_from_args(args, extra=("safety", "h_max", "steps", "checkpoint_every"))
    setup_cli_logger(args, cfg)
    with scipy.fft.set_workers(cfg.threads):
        return cmd_run(cfg)


def register_run_commands(subparsers) -> None:
    p = subparsers.add_parser("run", help="Restarted Taylor-series time stepping")
    add_common_args(p)
    p.add_argument("--safety", type=float, default=None, help="step = safety * radius estimate")
    p.add_argument("--hmax", dest="h_max", type=float, default=None, help="largest allowed step")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--checkpoint-every", dest="checkpoint_every", type=int, default=None, help="0 disables checkpoints")
    p.set_defaults(func=_run)
