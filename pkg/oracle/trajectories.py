from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from core.exceptions import OracleError
from fields.offgrid import evaluate_at
from fields.spectral import SpectralField
from oracle.euler import VelocityHistory
from taylor.series import TaylorSeries

TWO_PI = 2.0 * math.pi


def periodic_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance on the 2pi torus along the last axis."""
    d = np.mod(a - b + math.pi, TWO_PI) - math.pi
    return np.sqrt(np.sum(d * d, axis=-1))


def seed_points(count: int, seed: int = 0) -> np.ndarray:
    """`count` uniform Lagrangian start points, shape (count, 3)."""
    if count < 1:
        raise OracleError(f"trajectories: need at least one seed: {count}")
    rng = np.random.default_rng(int(seed))
    return rng.uniform(0.0, TWO_PI, size=(int(count), 3))


@dataclass(frozen=True, eq=False)
class TrajectorySet:
    """positions[p, i] = x(seeds[p], times[i]) wrapped into [0, 2pi)."""

    seeds: np.ndarray
    times: np.ndarray
    positions: np.ndarray

    def __post_init__(self) -> None:
        P = self.seeds.shape[0]
        if self.seeds.shape != (P, 3) or self.positions.shape != (P, self.times.size, 3):
            raise OracleError(
                f"trajectories: inconsistent shapes seeds={self.seeds.shape} "
                f"times={self.times.shape} positions={self.positions.shape}"
            )
        object.__setattr__(self, "positions", np.mod(self.positions, TWO_PI))

    def frame(self) -> pd.DataFrame:
        P, T, _ = self.positions.shape
        return pd.DataFrame(
            {
                "seed": np.repeat(np.arange(P), T),
                "t": np.tile(self.times, P),
                "x1": self.positions[:, :, 0].ravel(),
                "x2": self.positions[:, :, 1].ravel(),
                "x3": self.positions[:, :, 2].ravel(),
            }
        )


def _check_times(times: np.ndarray, t_end: float) -> np.ndarray:
    ts = np.asarray(times, dtype=np.float64)
    if ts.ndim != 1 or ts.size == 0:
        raise OracleError("trajectories: times must be a non-empty 1-d array")
    if np.any(np.diff(ts) < 0.0):
        raise OracleError("trajectories: times must be nondecreasing")
    if ts[0] < 0.0 or ts[-1] > t_end + 1e-12:
        raise OracleError(f"trajectories: times [{ts[0]}, {ts[-1]}] outside [0, {t_end}]")
    return ts


def integrate_trajectories(history: VelocityHistory, seeds: np.ndarray, times: np.ndarray) -> TrajectorySet:
    """RK4 on dx/dt = v(x, t), substeps no longer than the solver's step."""
    ts = _check_times(times, history.t_end)
    grid = history.grid
    x = np.asarray(seeds, dtype=np.float64).T.copy()
    dt_max = float(np.max(np.diff(history.times))) if history.times.size > 1 else math.inf

    def vel(t: float, pts: np.ndarray) -> np.ndarray:
        return evaluate_at(SpectralField(grid, history.velocity_at(t)), pts)

    out = np.empty((x.shape[1], ts.size, 3))
    t = 0.0
    for i, target in enumerate(ts):
        span = float(target) - t
        if span > 0.0:
            m = max(1, int(math.ceil(span / dt_max - 1e-9)))
            h = span / m
            for _ in range(m):
                k1 = vel(t, x)
                k2 = vel(t + 0.5 * h, x + 0.5 * h * k1)
                k3 = vel(t + 0.5 * h, x + 0.5 * h * k2)
                k4 = vel(t + h, x + h * k3)
                x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                t += h
            t = float(target)
        out[:, i, :] = x.T
    return TrajectorySet(seeds=np.asarray(seeds, dtype=np.float64), times=ts, positions=out)


def series_coefficients_at(series: TaylorSeries, seeds: np.ndarray) -> np.ndarray:
    """xi^(s)(q_p) for s = 1..S, shape (S, P, 3)."""
    pts = np.asarray(seeds, dtype=np.float64).T
    return np.stack([evaluate_at(c, pts).T for c in series.coeffs])


def series_trajectories(series: TaylorSeries, seeds: np.ndarray, times: np.ndarray) -> TrajectorySet:
    """x(q, t) = q + sum_s xi^(s)(q) t^s at the seeds."""
    ts = np.asarray(times, dtype=np.float64)
    if ts.ndim != 1 or ts.size == 0:
        raise OracleError("trajectories: times must be a non-empty 1-d array")
    coeffs = series_coefficients_at(series, seeds)
    q = np.asarray(seeds, dtype=np.float64)
    out = np.empty((q.shape[0], ts.size, 3))
    for i, t in enumerate(ts):
        acc = np.zeros_like(q)
        for c in coeffs[::-1]:
            acc = (acc + c) * t
        out[:, i, :] = q + acc
    return TrajectorySet(seeds=q, times=ts, positions=out)


@dataclass(frozen=True)
class TrajectoryComparison:
    times: np.ndarray
    max_err: np.ndarray
    rms_err: np.ndarray
    rel_err: np.ndarray

    @property
    def max_error(self) -> float:
        return float(np.max(self.max_err))

    @property
    def max_relative_error(self) -> float:
        return float(np.max(self.rel_err))

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"t": self.times, "max_err": self.max_err, "rms_err": self.rms_err, "rel_err": self.rel_err}
        )


def compare_trajectories(a: TrajectorySet, b: TrajectorySet) -> TrajectoryComparison:
    """Per-time periodic distance between two sets over the same seeds and times.

    rel_err divides by the largest displacement of `b` at that time (0 when both vanish).
    """
    if a.seeds.shape != b.seeds.shape or not np.allclose(a.seeds, b.seeds, rtol=0.0, atol=1e-14):
        raise OracleError("trajectories: seed sets differ")
    if a.times.shape != b.times.shape or not np.allclose(a.times, b.times, rtol=0.0, atol=1e-14):
        raise OracleError("trajectories: sample times differ")

    dist = periodic_distance(a.positions, b.positions)
    max_err = np.max(dist, axis=0)
    rms_err = np.sqrt(np.mean(dist * dist, axis=0))
    scale = np.max(periodic_distance(b.positions, b.seeds[:, None, :]), axis=0)
    rel = np.where(scale > 0.0, max_err / np.where(scale > 0.0, scale, 1.0), np.where(max_err > 0.0, np.inf, 0.0))
    return TrajectoryComparison(times=a.times.copy(), max_err=max_err, rms_err=rms_err, rel_err=rel)
