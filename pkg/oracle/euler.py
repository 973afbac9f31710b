"""
Eulerian reference solver: vorticity form, RK4 in time, 2/3-rule products.

    d omega / dt = curl(u x omega),   u_hat = i k x omega_hat / |k|^2 + U

The mean velocity U is constant for periodic Euler and is carried separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import OracleError
from core.logging import get_logger
from fields.grid import GridSpec
from fields.operators import cross_values, curl, divergence
from fields.spectral import SpectralField, fft_values, ifft_coeffs

logger = get_logger(__name__)

CFL = 0.5
DIV_TOL = 1e-10
DEFAULT_STEPS_PER_UNIT = 1000


@dataclass(frozen=True, eq=False)
class VelocityHistory:
    """Velocity snapshots u_hat[i] and du/dt_hat[i] at times[i] (all solver steps)."""

    grid: GridSpec
    times: np.ndarray
    u_hat: np.ndarray
    dudt_hat: np.ndarray

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def velocity(self, i: int) -> SpectralField:
        return SpectralField(self.grid, self.u_hat[i])

    def velocity_at(self, t: float) -> np.ndarray:
        """Cubic Hermite interpolation of the velocity coefficients at time t."""
        t = float(t)
        times = self.times
        if t < times[0] - 1e-12 or t > times[-1] + 1e-12:
            raise OracleError(f"oracle: t={t} outside history [{times[0]}, {times[-1]}]")
        if len(times) == 1:
            return self.u_hat[0].copy()
        i = int(np.clip(np.searchsorted(times, t, side="right") - 1, 0, len(times) - 2))
        h = float(times[i + 1] - times[i])
        s = (t - float(times[i])) / h
        h00 = (1.0 + 2.0 * s) * (1.0 - s) ** 2
        h10 = s * (1.0 - s) ** 2
        h01 = s * s * (3.0 - 2.0 * s)
        h11 = s * s * (s - 1.0)
        return (
            h00 * self.u_hat[i]
            + h10 * h * self.dudt_hat[i]
            + h01 * self.u_hat[i + 1]
            + h11 * h * self.dudt_hat[i + 1]
        )


def stability_bound(grid: GridSpec, max_speed: float) -> float:
    """Largest dt allowed: CFL * h / max|v|; inf for a fluid at rest."""
    if max_speed <= 0.0:
        return math.inf
    return CFL * grid.spacing / max_speed


def velocity_from_vorticity(grid: GridSpec, omega_hat: np.ndarray, mean: np.ndarray) -> np.ndarray:
    k = grid.kvec
    w = omega_hat * grid.inv_k2[None]
    u = 1j * np.stack(
        [
            k[1] * w[2] - k[2] * w[1],
            k[2] * w[0] - k[0] * w[2],
            k[0] * w[1] - k[1] * w[0],
        ]
    )
    u[:, 0, 0, 0] = mean
    return u


def _curl_hat(grid: GridSpec, c: np.ndarray) -> np.ndarray:
    k = grid.kvec
    return 1j * np.stack(
        [
            k[1] * c[2] - k[2] * c[1],
            k[2] * c[0] - k[0] * c[2],
            k[0] * c[1] - k[1] * c[0],
        ]
    )


def _rhs(grid: GridSpec, omega_hat: np.ndarray, mean: np.ndarray) -> tuple[np.ndarray, float]:
    """(d omega_hat / dt, max|u|)."""
    u_hat = velocity_from_vorticity(grid, omega_hat, mean)
    u = ifft_coeffs(u_hat).real
    w = ifft_coeffs(omega_hat).real
    nl = fft_values(cross_values(u, w)) * grid.dealias_mask
    speed = float(np.max(np.sqrt(np.sum(u * u, axis=0))))
    return _curl_hat(grid, nl), speed


def _dudt(grid: GridSpec, domega_hat: np.ndarray) -> np.ndarray:
    return velocity_from_vorticity(grid, domega_hat, np.zeros(3, dtype=np.complex128))


def euler_solve(v0: SpectralField, t_end: float, dt: float | None = None) -> VelocityHistory:
    """Integrate from 0 to t_end; dt is shrunk so that it divides t_end.

    Without dt the step is min(stability bound / 2, 1 / DEFAULT_STEPS_PER_UNIT).
    """
    if v0.rank != "vector":
        raise OracleError("oracle: initial velocity must be a vector field")
    div = divergence(v0).max_amplitude()
    if div > DIV_TOL:
        raise OracleError(f"oracle: initial velocity is not solenoidal (max |div| = {div:.3e})")
    t_end = float(t_end)
    if not t_end >= 0.0:
        raise OracleError(f"oracle: t_end must be >= 0: {t_end}")

    grid = v0.grid
    mean = np.asarray(v0.mean, dtype=np.complex128)
    omega = curl(v0).coeffs.copy()
    max_speed = float(np.max(np.sqrt(np.sum(v0.values() ** 2, axis=0))))
    bound = stability_bound(grid, max_speed)

    if dt is None:
        dt = min(0.5 * bound, 1.0 / DEFAULT_STEPS_PER_UNIT)
    dt = float(dt)
    if not dt > 0.0:
        raise OracleError(f"oracle: dt must be > 0: {dt}")
    if dt > bound * (1.0 + 1e-12):
        raise OracleError(f"oracle: dt={dt:.4g} violates the stability bound {bound:.4g} (max|v|={max_speed:.4g})")

    nsteps = max(1, int(math.ceil(t_end / dt - 1e-12))) if t_end > 0.0 else 0
    dt = t_end / nsteps if nsteps else 0.0

    times = [0.0]
    k1, _ = _rhs(grid, omega, mean)
    u_hist = [velocity_from_vorticity(grid, omega, mean)]
    du_hist = [_dudt(grid, k1)]

    for i in range(nsteps):
        k2, _ = _rhs(grid, omega + 0.5 * dt * k1, mean)
        k3, _ = _rhs(grid, omega + 0.5 * dt * k2, mean)
        k4, _ = _rhs(grid, omega + dt * k3, mean)
        omega = omega + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        omega *= grid.dealias_mask

        k1, speed = _rhs(grid, omega, mean)
        if dt > stability_bound(grid, speed) * (1.0 + 1e-12):
            raise OracleError(
                f"oracle: stability bound violated at t={(i + 1) * dt:.4g} (dt={dt:.4g}, max|v|={speed:.4g})"
            )
        times.append((i + 1) * dt)
        u_hist.append(velocity_from_vorticity(grid, omega, mean))
        du_hist.append(_dudt(grid, k1))

    logger.info("oracle: %d RK4 steps of dt=%.4g to t=%.4g", nsteps, dt, t_end)
    return VelocityHistory(
        grid=grid,
        times=np.asarray(times, dtype=np.float64),
        u_hat=np.stack(u_hist),
        dudt_hat=np.stack(du_hist),
    )
