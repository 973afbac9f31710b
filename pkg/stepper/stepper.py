from __future__ import annotations

import math
from typing import Callable

from bounds.analyticity import BoundConfig, t_analyticity
from bounds.holder import holder_norm
from core.exceptions import StepperError
from core.logging import get_logger
from fields.operators import curl
from hodge.decomposition import leray_project
from stepper.resample import MAX_ITER, TOL, resample_to_grid
from stepper.state import FlowState, measure
from taylor.evaluate import evaluate_series, jacobian
from taylor.radius import MIN_ORDER, estimate_radius
from taylor.series import SOLVE_TOL, TaylorSeries, build_series

logger = get_logger(__name__)

# Ten default steps stay below t = 0.5, where a Taylor-Green state at n = 32
# still fits the dealiased band; longer runs lose energy to truncation.
DEFAULT_H_MAX = 0.05


def suggest_step(radius: float, safety: float, h_max: float) -> float:
    if not safety > 0.0:
        raise StepperError(f"stepper: safety must be > 0: {safety}")
    if not h_max > 0.0:
        raise StepperError(f"stepper: h_max must be > 0: {h_max}")
    if not math.isfinite(radius):
        return float(h_max)
    return min(float(safety) * float(radius), float(h_max))


def restart_series(state: FlowState, order: int, *, solve_tol: float = SOLVE_TOL) -> tuple[TaylorSeries, float]:
    """Taylor series about the state's time and its radius estimate."""
    if order < MIN_ORDER:
        raise StepperError(f"stepper: order must be >= {MIN_ORDER}: {order}")
    series = build_series(state.velocity, order, solve_tol=solve_tol)
    return series, estimate_radius(series)


def adaptive_step(
    state: FlowState,
    order: int,
    safety: float = 0.5,
    h_max: float = DEFAULT_H_MAX,
    *,
    solve_tol: float = SOLVE_TOL,
) -> float:
    _, radius = restart_series(state, order, solve_tol=solve_tol)
    return suggest_step(radius, safety, h_max)


def step(
    state: FlowState,
    h: float,
    order: int,
    safety: float = 0.5,
    *,
    bound_config: BoundConfig | None = None,
    method: str = "fourier",
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    solve_tol: float = SOLVE_TOL,
    series: TaylorSeries | None = None,
) -> FlowState:
    """Advance by h: sum the series, move velocity to the regular grid, re-project."""
    h = float(h)
    if not h > 0.0:
        raise StepperError(f"stepper: step must be > 0: {h}")
    if series is None:
        series, radius = restart_series(state, order, solve_tol=solve_tol)
    else:
        if series.order < MIN_ORDER:
            raise StepperError(f"stepper: order must be >= {MIN_ORDER}: {series.order}")
        radius = estimate_radius(series)
    limit = float(safety) * radius
    if h > limit * (1.0 + 1e-12):
        raise StepperError(f"stepper: h={h:.6g} exceeds safety bound {limit:.6g} (radius {radius:.6g})")

    ev = evaluate_series(series, h, radius=radius)
    _, det = jacobian(series, h)
    res = resample_to_grid(ev.displacement(), ev.velocity(), det=det, method=method, tol=tol, max_iter=max_iter)
    velocity = leray_project(res.values)

    prev = state.diagnostics
    extra = {
        "radius_estimate": radius,
        "resample_error": prev.resample_error + res.residual,
        "resample_iterations": res.iterations,
        "min_det": float(det.min()),
        "max_det": float(det.max()),
    }
    if bound_config is not None:
        w = holder_norm(curl(velocity), bound_config.gamma)
        extra["vorticity_holder"] = w
        extra["t_c"] = t_analyticity(w, bound_config)
    diag = measure(velocity, **extra)

    out = state.advanced(h, velocity, diag)
    logger.info(
        "stepper: step=%d t=%.6f h=%.4g radius=%.4g energy=%.12e resample_iters=%d",
        out.step_count,
        out.time,
        h,
        radius,
        diag.energy,
        res.iterations,
    )
    return out


def advance(
    state: FlowState,
    *,
    steps: int,
    order: int,
    safety: float = 0.5,
    h_max: float = DEFAULT_H_MAX,
    bound_config: BoundConfig | None = None,
    method: str = "fourier",
    solve_tol: float = SOLVE_TOL,
    on_step: Callable[[FlowState], None] | None = None,
) -> list[FlowState]:
    """Take `steps` adaptive steps; returns all states including the initial one."""
    if steps < 0:
        raise StepperError(f"stepper: steps must be >= 0: {steps}")
    history = [state]
    for _ in range(int(steps)):
        series, radius = restart_series(history[-1], order, solve_tol=solve_tol)
        h = suggest_step(radius, safety, h_max)
        nxt = step(
            history[-1],
            h,
            order,
            safety,
            bound_config=bound_config,
            method=method,
            solve_tol=solve_tol,
            series=series,
        )
        history.append(nxt)
        if on_step is not None:
            on_step(nxt)
    return history
