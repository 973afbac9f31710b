from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

EVENTS_FILE = "events.jsonl"


@dataclass(frozen=True)
class Event:
    ts: str
    kind: str
    payload: dict


def _now_ts() -> str:
    return datetime.now(timezone.utc).isoformat()


def _jsonable(v: Any) -> Any:
    # JSON has no inf/nan literals
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def events_path(output_dir: str | Path) -> Path:
    return Path(output_dir) / EVENTS_FILE


def append_event(kind: str, payload: dict, *, path: str | Path) -> Event:
    e = Event(ts=_now_ts(), kind=str(kind), payload=_jsonable(dict(payload)))
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps(e.__dict__, ensure_ascii=False) + "\n")
    return e


def read_recent_events(*, path: str | Path, limit: int = 200) -> list[dict]:
    p = Path(path)
    if not p.exists():
        return []

    lines = p.read_text(encoding="utf-8").splitlines()
    out: list[dict] = []
    for line in lines[-int(max(1, limit)) :]:
        try:
            out.append(json.loads(line))
        except Exception:
            continue
    return out
