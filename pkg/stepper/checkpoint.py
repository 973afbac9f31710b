"""
Checkpoints: `<stem>.bin` holds the velocity in the binary field format,
`<stem>.txt` is a sidecar of `key=value` lines (time, step_count and every
diagnostic). Floats are written with repr() so they round-trip exactly.
"""

from __future__ import annotations

from dataclasses import fields as dc_fields
from pathlib import Path

from core.exceptions import StepperError
from fields.io import load_field, save_field
from stepper.state import FlowState, StepDiagnostics

_INT_KEYS = {"step_count", "resample_iterations"}


def checkpoint_paths(directory: str | Path, step_count: int) -> tuple[Path, Path]:
    stem = Path(directory) / f"checkpoint_{int(step_count):06d}"
    return stem.with_suffix(".bin"), stem.with_suffix(".txt")


def save_checkpoint(state: FlowState, directory: str | Path) -> tuple[Path, Path]:
    bin_path, txt_path = checkpoint_paths(directory, state.step_count)
    save_field(state.velocity, bin_path)
    lines = [f"time={state.time!r}", f"step_count={state.step_count}"]
    for k, v in state.diagnostics.as_dict().items():
        lines.append(f"{k}={v!r}")
    txt_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return bin_path, txt_path


def _parse_sidecar(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise StepperError(f"checkpoint: malformed sidecar line {raw!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def load_checkpoint(bin_path: str | Path) -> FlowState:
    bin_path = Path(bin_path)
    txt_path = bin_path.with_suffix(".txt")
    if not txt_path.exists():
        raise StepperError(f"checkpoint: sidecar not found: {txt_path}")
    kv = _parse_sidecar(txt_path.read_text(encoding="utf-8"))
    velocity = load_field(bin_path)

    try:
        diag_kwargs = {}
        for f in dc_fields(StepDiagnostics):
            if f.name in kv:
                diag_kwargs[f.name] = int(kv[f.name]) if f.name in _INT_KEYS else float(kv[f.name])
        return FlowState(
            time=float(kv["time"]),
            grid=velocity.grid,
            velocity=velocity,
            step_count=int(kv["step_count"]),
            diagnostics=StepDiagnostics(**diag_kwargs),
        )
    except (KeyError, ValueError, TypeError) as e:
        raise StepperError(f"checkpoint: invalid sidecar {txt_path}: {e}") from e
