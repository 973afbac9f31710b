from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import SeriesError
from core.logging import get_logger
from fields.grid import GridSpec
from fields.operators import band_limit, cross_values, curl, divergence
from fields.spectral import SpectralField, ifft_coeffs, truncate_values
from taylor.recursion import curl_rhs, div_rhs
from taylor.series import TaylorSeries

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SeriesEvaluation:
    """Displacement xi(q, t) and velocity v(q, t) = d xi / dt summed at one time.

    Coefficient arrays are complex combinations of Hermitian data; they are
    Hermitian again only for real t.
    """

    t: complex
    grid: GridSpec
    displacement_hat: np.ndarray
    velocity_hat: np.ndarray

    @property
    def is_real(self) -> bool:
        return float(np.imag(self.t)) == 0.0

    def _field(self, c: np.ndarray) -> SpectralField:
        if not self.is_real:
            raise SeriesError(f"evaluate: t={self.t} is complex; use the *_values accessors")
        return SpectralField(self.grid, c)

    def displacement(self) -> SpectralField:
        return self._field(self.displacement_hat)

    def velocity(self) -> SpectralField:
        return self._field(self.velocity_hat)

    def displacement_values(self) -> np.ndarray:
        v = ifft_coeffs(self.displacement_hat)
        return np.ascontiguousarray(v.real) if self.is_real else v

    def velocity_values(self) -> np.ndarray:
        v = ifft_coeffs(self.velocity_hat)
        return np.ascontiguousarray(v.real) if self.is_real else v


def _warn_radius(t: complex, radius: float | None) -> None:
    if radius is not None and abs(t) > radius:
        logger.warning("evaluate: |t|=%.4g beyond estimated radius %.4g", abs(t), radius)


def _horner(coeffs: list[np.ndarray], t: complex) -> np.ndarray:
    """sum_{s>=1} coeffs[s-1] t^s."""
    acc = np.zeros(coeffs[0].shape, dtype=np.complex128)
    for c in reversed(coeffs):
        acc = (acc + c) * t
    return acc


def _horner_derivative(coeffs: list[np.ndarray], t: complex) -> np.ndarray:
    """sum_{s>=1} s coeffs[s-1] t^(s-1)."""
    acc = np.zeros(coeffs[0].shape, dtype=np.complex128)
    for s in range(len(coeffs), 0, -1):
        acc = acc * t + s * coeffs[s - 1]
    return acc


def evaluate_series(series: TaylorSeries, t: float | complex, *, radius: float | None = None) -> SeriesEvaluation:
    t = complex(t)
    if not (math.isfinite(t.real) and math.isfinite(t.imag)):
        raise SeriesError(f"evaluate: non-finite time {t}")
    _warn_radius(t, radius)
    cs = [c.coeffs for c in series.coeffs]
    return SeriesEvaluation(
        t=t,
        grid=series.grid,
        displacement_hat=_horner(cs, t),
        velocity_hat=_horner_derivative(cs, t),
    )


def displacement_gradient(series: TaylorSeries, t: float) -> np.ndarray:
    """Physical d_i xi_j at time t, shape (3, 3, n, n, n)."""
    acc = np.zeros_like(series.grad_coeffs[0])
    for g in reversed(series.grad_coeffs):
        acc = (acc + g) * t
    return acc


def velocity_gradient(series: TaylorSeries, t: float) -> np.ndarray:
    acc = np.zeros_like(series.grad_coeffs[0])
    for s in range(series.order, 0, -1):
        acc = acc * t + s * series.grad_coeffs[s - 1]
    return acc


def jacobian(series: TaylorSeries, t: float) -> tuple[np.ndarray, np.ndarray]:
    """(J, det J) with J[i, j] = d x_j / d q_i = delta_ij + d_i xi_j, on the q-grid."""
    jac = displacement_gradient(series, float(t))
    for i in range(3):
        jac[i, i] += 1.0
    det = np.linalg.det(np.moveaxis(jac, (0, 1), (-2, -1)))
    return jac, det


def jacobian_residual(series: TaylorSeries, t: float) -> float:
    """max |det(grad x) - 1| on the dealiased band.

    Products are truncated the way the recursion truncates them, so every
    order the series carries cancels to roundoff and only the O(t^(S+1)) tail is left.
    """
    grid = series.grid
    a = displacement_gradient(series, float(t))
    acc = a[0, 0] + a[1, 1] + a[2, 2]
    for i in range(3):
        for j in range(i + 1, 3):
            acc = acc + a[i, i] * a[j, j] - a[j, i] * a[i, j]
    cof = truncate_values(cross_values(a[:, 1], a[:, 2]), grid)
    acc = acc + np.sum(a[:, 0] * cof, axis=0)
    return band_limit(acc, grid).max_amplitude()


def cauchy_invariant_residual(series: TaylorSeries, t: float) -> float:
    """max |sum_k grad xdot_k x grad x_k - omega0| on the dealiased band."""
    t = float(t)
    jac, _ = jacobian(series, t)
    dv = velocity_gradient(series, t)
    acc = np.zeros((3,) + series.grid.shape, dtype=np.float64)
    for k in range(3):
        acc += cross_values(dv[:, k], jac[:, k])
    inv = band_limit(acc, series.grid)
    return (inv - series.omega0).max_amplitude()


def solve_residuals(series: TaylorSeries) -> list[tuple[int, float, float]]:
    """Per order: (s, max|s curl xi - curl_rhs|, max|div xi - div_rhs|)."""
    out = []
    for s in range(1, series.order + 1):
        xi = series.xi(s)
        c_res = (curl(xi) * float(s) - curl_rhs(s, series)).max_amplitude()
        d_res = (divergence(xi) - div_rhs(s, series)).max_amplitude()
        out.append((s, float(c_res), float(d_res)))
    return out
