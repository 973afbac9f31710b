from __future__ import annotations

import numpy as np

from core.exceptions import FieldError
from fields.spectral import SpectralField

MEAN_TOL = 1e-12


def _require_zero_mean(f: SpectralField, op: str, mean_tol: float) -> None:
    mean = np.abs(np.atleast_1d(f.coeffs[..., 0, 0, 0]))
    scale = max(1.0, f.max_amplitude())
    if float(np.max(mean)) > mean_tol * scale:
        raise FieldError(f"{op}: input must have zero spatial mean (|mean|={float(np.max(mean)):.3e})")


def inverse_laplacian(f: SpectralField, *, mean_tol: float = MEAN_TOL) -> SpectralField:
    """Solve lap(phi) = f on the torus with mean(phi) = 0."""
    _require_zero_mean(f, "inverse_laplacian", mean_tol)
    return SpectralField(f.grid, -f.grid.inv_k2 * f.coeffs, zero_mean=True)


def hessian_inverse_laplacian(f: SpectralField, i: int, j: int, *, mean_tol: float = MEAN_TOL) -> SpectralField:
    """d_i d_j lap^{-1} f; symbol k_i k_j / |k|^2, bounded by 1."""
    _require_zero_mean(f, "hessian_inverse_laplacian", mean_tol)
    k = f.grid.kvec
    return SpectralField(f.grid, k[i] * k[j] * f.grid.inv_k2 * f.coeffs, zero_mean=True)
