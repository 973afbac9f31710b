# interfaces/cli/output.py

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import pandas as pd

FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    output: str


def _jsonable(v: Any) -> Any:
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Path):
        return str(v)
    if hasattr(v, "item") and callable(v.item):
        return _jsonable(v.item())
    return v


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(_jsonable(payload), ensure_ascii=False, indent=2)


def write_csv(df: pd.DataFrame, path: str | Path, fingerprint: str) -> Path:
    """CSV with a leading `# config_sha256=<hex>` line; floats at full precision."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# config_sha256={fingerprint}\n")
        df.to_csv(fh, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return p


def read_csv(path: str | Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")
