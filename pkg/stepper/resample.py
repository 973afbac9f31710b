from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import StepperError
from core.logging import get_logger
from fields.offgrid import evaluate
from fields.spectral import SpectralField, forward_transform

logger = get_logger(__name__)

TOL = 1e-12
MAX_ITER = 50
JACOBIAN_THRESHOLD = 0.2


@dataclass(frozen=True, eq=False)
class ResampleResult:
    values: SpectralField
    iterations: int
    residual: float
    max_det_deviation: float = 0.0


def periodic_difference(d: np.ndarray, length: float = 2.0 * math.pi) -> np.ndarray:
    """Wrap differences into [-L/2, L/2)."""
    half = 0.5 * length
    return np.mod(d + half, length) - half


def invert_map(
    displacement: SpectralField,
    targets: np.ndarray,
    *,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    method: str = "fourier",
) -> tuple[np.ndarray, int, float]:
    """Solve q + xi(q) = x for each target x (shape (3, P)) by fixed-point iteration.

    Returns (q, iterations, worst residual). Converged points leave the
    active set, so later sweeps only touch the slow ones.
    """
    if displacement.rank != "vector":
        raise StepperError("resample: displacement must be a vector field")
    x = np.asarray(targets, dtype=np.float64)
    q = x.copy()
    active = np.arange(x.shape[1])
    it = 0
    while active.size and it < max_iter:
        it += 1
        q_new = x[:, active] - evaluate(displacement, q[:, active], method=method)
        step = np.max(np.abs(q_new - q[:, active]), axis=0)
        q[:, active] = q_new
        active = active[step > tol]

    resid = periodic_difference(x - q - evaluate(displacement, q, method=method))
    worst = float(np.max(np.abs(resid))) if resid.size else 0.0
    if active.size:
        raise StepperError(
            f"resample: fixed point did not converge in {max_iter} iterations "
            f"({active.size} points, worst residual {worst:.3e})"
        )
    return q, it, worst


def resample_to_grid(
    displacement: SpectralField,
    values: SpectralField,
    *,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    method: str = "fourier",
    det: np.ndarray | None = None,
    jacobian_threshold: float = JACOBIAN_THRESHOLD,
) -> ResampleResult:
    """Values carried by the particles from q-grid to the regular x-grid: out(x) = values(q(x))."""
    grid = displacement.grid
    if values.grid != grid:
        raise StepperError(f"resample: value grid {values.grid} differs from displacement grid {grid}")

    dev = 0.0
    if det is not None:
        dev = float(np.max(np.abs(det - 1.0)))
        if dev > jacobian_threshold:
            logger.warning("resample: max|det - 1| = %.3e exceeds %.3g; map may not be invertible", dev, jacobian_threshold)

    x = grid.points.reshape(3, -1)
    q, it, worst = invert_map(displacement, x, tol=tol, max_iter=max_iter, method=method)
    out = evaluate(values, q, method=method)
    shape = (3,) + grid.shape if values.is_vector else grid.shape
    resampled = forward_transform(out.reshape(shape), grid, zero_mean=values.zero_mean)
    return ResampleResult(values=resampled, iterations=it, residual=worst, max_det_deviation=dev)
