from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any

from core.exceptions import ConfigError
from core.fingerprint import sha256_text

OUTPUT_DIR_ENV = "CAUCHY_LAGRANGIAN_OUTPUT_DIR"


@dataclass(frozen=True)
class AppConfig:
    env: str
    log_level: str
    log_dir: Path
    log_file: str
    json_log_file: str
    console_log_format: str
    enable_json_file_log: bool


@dataclass(frozen=True)
class RunConfig:
    preset: str = "taylor-green"
    field_file: Path | None = None
    n: int = 32
    dealias_fraction: float = 2.0 / 3.0
    order: int = 16
    gamma: float = 0.5
    theta: float | None = None
    theta_tilde: float = 1.0
    safety: float = 0.5
    h_max: float = 0.05
    steps: int = 10
    checkpoint_every: int = 0
    t_end: float = 0.1
    dt: float | None = None
    seeds: int = 64
    seed: int = 0
    threads: int = 1
    output_dir: Path = Path("output")
    holder_radius: float = 0.25
    omega_norm: float | None = None
    compare_time: float = 0.1
    curve_samples: int = 100
    solve_tol: float = 1e-10
    depletion_tol: float = 1e-12

    def as_dict(self) -> dict[str, Any]:
        out = asdict(self)
        for k, v in out.items():
            if isinstance(v, Path):
                out[k] = str(v)
        return out

    def fingerprint(self) -> str:
        import yaml  # type: ignore

        # output_dir does not change results, so it stays out of the hash
        payload = {k: v for k, v in self.as_dict().items() if k != "output_dir"}
        return sha256_text(yaml.safe_dump(payload, sort_keys=True))


def _require_str(obj: dict[str, Any], key: str) -> str:
    val = obj.get(key)
    if not isinstance(val, str) or not val.strip():
        raise ConfigError(f"Invalid or missing config value: {key}")
    return val


def _get_str(obj: dict[str, Any], key: str, default: str) -> str:
    val = obj.get(key, default)
    if val is None:
        return default
    if not isinstance(val, str):
        raise ConfigError(f"Invalid config value (expected string): {key}")
    return val


def _get_bool(obj: dict[str, Any], key: str, default: bool) -> bool:
    val = obj.get(key, default)
    if isinstance(val, bool):
        return val
    if val is None:
        return default
    raise ConfigError(f"Invalid config value (expected bool): {key}")


def _get_int(obj: dict[str, Any], key: str, default: int) -> int:
    val = obj.get(key, default)
    if val is None:
        return default
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"Invalid config value (expected int): {key}")
    return int(val)


def _get_float(obj: dict[str, Any], key: str, default: float | None) -> float | None:
    val = obj.get(key, default)
    if val is None:
        return default
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"Invalid config value (expected number): {key}")
    return float(val)


def _read_yaml(config_path: str | Path) -> dict[str, Any]:
    path = Path(config_path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")

    try:
        import yaml  # type: ignore
    except ModuleNotFoundError as e:
        raise ConfigError(
            "PyYAML is not installed. Install it (e.g. `pip install PyYAML`) to use YAML config."
        ) from e

    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except Exception as e:  # noqa: BLE001
        raise ConfigError(f"Failed to parse YAML config: {path}") from e

    if not isinstance(raw, dict):
        raise ConfigError("Config root must be a YAML mapping")
    return raw


def load_config(config_path: str | Path) -> AppConfig:
    raw = _read_yaml(config_path)

    app = raw.get("app")
    if not isinstance(app, dict):
        raise ConfigError("Missing 'app' section in config")

    env = _require_str(app, "env")
    log_level = _require_str(app, "log_level")

    log_dir_raw = _require_str(app, "log_dir")
    log_dir = Path(log_dir_raw).expanduser()

    log_file = _require_str(app, "log_file")

    json_log_file = _get_str(app, "json_log_file", default="app.json.log")
    console_log_format = _get_str(app, "console_log_format", default="text")
    enable_json_file_log = _get_bool(app, "enable_json_file_log", default=True)

    return AppConfig(
        env=env,
        log_level=log_level,
        log_dir=log_dir,
        log_file=log_file,
        json_log_file=json_log_file,
        console_log_format=console_log_format,
        enable_json_file_log=enable_json_file_log,
    )


def parse_run_section(run: dict[str, Any]) -> RunConfig:
    d = RunConfig()

    unknown = sorted(set(run) - set(RunConfig.__dataclass_fields__))
    if unknown:
        raise ConfigError(f"Unknown run config keys: {unknown}")

    field_file_raw = run.get("field_file")
    if field_file_raw is not None and not isinstance(field_file_raw, (str, Path)):
        raise ConfigError("Invalid config value (expected path): field_file")

    cfg = RunConfig(
        preset=_get_str(run, "preset", d.preset),
        field_file=None if field_file_raw is None else Path(field_file_raw).expanduser(),
        n=_get_int(run, "n", d.n),
        dealias_fraction=_get_float(run, "dealias_fraction", d.dealias_fraction),
        order=_get_int(run, "order", d.order),
        gamma=_get_float(run, "gamma", d.gamma),
        theta=_get_float(run, "theta", None),
        theta_tilde=_get_float(run, "theta_tilde", d.theta_tilde),
        safety=_get_float(run, "safety", d.safety),
        h_max=_get_float(run, "h_max", d.h_max),
        steps=_get_int(run, "steps", d.steps),
        checkpoint_every=_get_int(run, "checkpoint_every", d.checkpoint_every),
        t_end=_get_float(run, "t_end", d.t_end),
        dt=_get_float(run, "dt", None),
        seeds=_get_int(run, "seeds", d.seeds),
        seed=_get_int(run, "seed", d.seed),
        threads=_get_int(run, "threads", d.threads),
        output_dir=Path(_get_str(run, "output_dir", str(d.output_dir))).expanduser(),
        holder_radius=_get_float(run, "holder_radius", d.holder_radius),
        omega_norm=_get_float(run, "omega_norm", None),
        compare_time=_get_float(run, "compare_time", d.compare_time),
        curve_samples=_get_int(run, "curve_samples", d.curve_samples),
        solve_tol=_get_float(run, "solve_tol", d.solve_tol),
        depletion_tol=_get_float(run, "depletion_tol", d.depletion_tol),
    )
    validate_run_config(cfg)
    return cfg


def validate_run_config(cfg: RunConfig) -> None:
    if cfg.field_file is not None and not cfg.field_file.exists():
        raise ConfigError(f"Initial field file not found: {cfg.field_file}")
    if cfg.n < 8 or cfg.n % 2 != 0:
        raise ConfigError(f"n must be even and >= 8: {cfg.n}")
    if not 0.0 < cfg.dealias_fraction <= 1.0:
        raise ConfigError(f"dealias_fraction must be in (0, 1]: {cfg.dealias_fraction}")
    if cfg.order < 1:
        raise ConfigError(f"order must be >= 1: {cfg.order}")
    if not 0.0 < cfg.gamma < 1.0:
        raise ConfigError(f"gamma must be in (0, 1): {cfg.gamma}")
    if cfg.theta is not None and cfg.theta <= 0.0:
        raise ConfigError(f"theta must be > 0: {cfg.theta}")
    if cfg.theta_tilde <= 0.0:
        raise ConfigError(f"theta_tilde must be > 0: {cfg.theta_tilde}")
    if not 0.0 < cfg.safety <= 1.0:
        raise ConfigError(f"safety must be in (0, 1]: {cfg.safety}")
    if cfg.h_max <= 0.0:
        raise ConfigError(f"h_max must be > 0: {cfg.h_max}")
    if cfg.steps < 0 or cfg.checkpoint_every < 0:
        raise ConfigError("steps and checkpoint_every must be >= 0")
    if cfg.t_end < 0.0 or cfg.compare_time < 0.0:
        raise ConfigError("t_end and compare_time must be >= 0")
    if cfg.dt is not None and cfg.dt <= 0.0:
        raise ConfigError(f"dt must be > 0: {cfg.dt}")
    if cfg.seeds < 1:
        raise ConfigError(f"seeds must be >= 1: {cfg.seeds}")
    if cfg.threads < 1:
        raise ConfigError(f"threads must be >= 1: {cfg.threads}")
    if not 0.0 < cfg.holder_radius <= 0.5:
        raise ConfigError(f"holder_radius must be in (0, 0.5]: {cfg.holder_radius}")
    if cfg.omega_norm is not None and cfg.omega_norm < 0.0:
        raise ConfigError(f"omega_norm must be >= 0: {cfg.omega_norm}")
    if cfg.curve_samples < 2:
        raise ConfigError(f"curve_samples must be >= 2: {cfg.curve_samples}")


def load_run_config(
    config_path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Resolve RunConfig: YAML `run:` section, then flag overrides, then the env output dir."""

    run: dict[str, Any] = {}
    if config_path is not None:
        raw = _read_yaml(config_path)
        section = raw.get("run", {})
        if section is None:
            section = {}
        if not isinstance(section, dict):
            raise ConfigError("'run' section must be a YAML mapping")
        run.update(section)

    for k, v in (overrides or {}).items():
        if v is not None:
            run[k] = str(v) if isinstance(v, Path) else v

    cfg = parse_run_section(run)

    env_out = os.environ.get(OUTPUT_DIR_ENV)
    if env_out:
        cfg = replace(cfg, output_dir=Path(env_out).expanduser())
    return cfg
