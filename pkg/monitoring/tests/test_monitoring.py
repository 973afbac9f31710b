import math

from monitoring.events import append_event, events_path, read_recent_events
from monitoring.metrics import metrics_path, read_metrics, write_metrics


def test_events_append_and_read_back(tmp_path):
    path = events_path(tmp_path)
    append_event("step", {"step": 1, "radius_estimate": math.inf}, path=path)
    append_event("step", {"step": 2, "radius_estimate": 0.5}, path=path)
    events = read_recent_events(path=path, limit=1)
    assert len(events) == 1
    assert events[0]["payload"]["step"] == 2
    first = read_recent_events(path=path)[0]
    assert first["payload"]["radius_estimate"] == "inf"


def test_missing_events_file_reads_empty(tmp_path):
    assert read_recent_events(path=tmp_path / "none.jsonl") == []


def test_metrics_snapshot_overwrites(tmp_path):
    path = metrics_path(tmp_path)
    write_metrics({"energy": 0.125}, path=path)
    write_metrics({"energy": 0.25, "t_c": math.nan}, path=path)
    got = read_metrics(path=path)
    assert got["metrics"]["energy"] == 0.25
    assert got["metrics"]["t_c"] == "nan"
