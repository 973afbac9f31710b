from __future__ import annotations

import numpy as np

from core.exceptions import FieldError
from fields.spectral import SpectralField

DEFAULT_CHUNK = 2048


def _half_band(coeffs: np.ndarray, n: int, K: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Retained modes with k1 >= 0 only; k1 > 0 gets weight 2 (Hermitian pairing)."""
    k1 = np.arange(0, K + 1)
    kr = np.arange(-K, K + 1)
    i1 = k1 % n
    ir = kr % n
    sub = coeffs[..., i1[:, None, None], ir[None, :, None], ir[None, None, :]]
    w = np.where(k1 == 0, 1.0, 2.0)
    sub = sub * w[:, None, None]
    # f = Re(S0 + 2 S+): the k1 = 0 plane sums to a real value on its own
    return sub, k1.astype(np.float64), kr.astype(np.float64)


def evaluate_at(f: SpectralField, points: np.ndarray, *, chunk: int = DEFAULT_CHUNK) -> np.ndarray:
    """Evaluate f at arbitrary points by direct Fourier summation over the dealiased band.

    `points` has shape (3, P). Returns shape (P,) for a scalar field and
    (3, P) for a vector field.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] != 3:
        raise FieldError(f"evaluate_at: points must have shape (3, P), got {pts.shape}")

    grid = f.grid
    K = grid.cutoff
    c = f.coeffs if f.is_vector else f.coeffs[None]
    sub, k1, kr = _half_band(c, grid.n, K)
    ncomp = sub.shape[0]
    m1 = k1.size
    m = kr.size

    # (k1, comp*k2*k3) for a single matmul against exp(i k1 x1)
    table = np.ascontiguousarray(np.moveaxis(sub, 0, 1).reshape(m1, ncomp * m * m))

    P = pts.shape[1]
    out = np.empty((ncomp, P), dtype=np.float64)
    for start in range(0, P, int(chunk)):
        stop = min(P, start + int(chunk))
        x = pts[:, start:stop]
        e1 = np.exp(1j * x[0][:, None] * k1[None, :])
        e2 = np.exp(1j * x[1][:, None] * kr[None, :])
        e3 = np.exp(1j * x[2][:, None] * kr[None, :])
        t = (e1 @ table).reshape(stop - start, ncomp, m, m)
        t = np.einsum("pcab,pa->pcb", t, e2)
        vals = np.einsum("pcb,pb->cp", t, e3)
        out[:, start:stop] = vals.real
    return out if f.is_vector else out[0]


def evaluate_at_cubic(f: SpectralField, points: np.ndarray) -> np.ndarray:
    """Tricubic spline interpolation of grid samples; faster, accurate to O(h^4) only."""
    from scipy.ndimage import map_coordinates

    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] != 3:
        raise FieldError(f"evaluate_at_cubic: points must have shape (3, P), got {pts.shape}")
    grid = f.grid
    idx = np.mod(pts, grid.length) / grid.spacing
    vals = f.values()
    if not f.is_vector:
        return map_coordinates(vals, idx, order=3, mode="grid-wrap")
    return np.stack([map_coordinates(vals[i], idx, order=3, mode="grid-wrap") for i in range(3)])


def evaluate(f: SpectralField, points: np.ndarray, *, method: str = "fourier") -> np.ndarray:
    if method == "fourier":
        return evaluate_at(f, points)
    if method == "cubic":
        return evaluate_at_cubic(f, points)
    raise FieldError(f"evaluate: unknown off-grid method {method!r}")
