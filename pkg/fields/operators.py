from __future__ import annotations

import numpy as np

from core.exceptions import FieldError
from fields.grid import GridSpec, require_same_grid
from fields.spectral import SpectralField, fft_values, ifft_coeffs


def _require_rank(f: SpectralField, rank: str, op: str) -> None:
    if f.rank != rank:
        raise FieldError(f"{op}: expected a {rank} field, got {f.rank}")


def gradient(f: SpectralField) -> SpectralField:
    _require_rank(f, "scalar", "gradient")
    ik = 1j * f.grid.kvec
    return SpectralField(f.grid, ik * f.coeffs[None], zero_mean=True)


def divergence(v: SpectralField) -> SpectralField:
    _require_rank(v, "vector", "divergence")
    ik = 1j * v.grid.kvec
    return SpectralField(v.grid, np.sum(ik * v.coeffs, axis=0), zero_mean=True)


def curl(v: SpectralField) -> SpectralField:
    _require_rank(v, "vector", "curl")
    k = v.grid.kvec
    c = v.coeffs
    out = 1j * np.stack(
        [
            k[1] * c[2] - k[2] * c[1],
            k[2] * c[0] - k[0] * c[2],
            k[0] * c[1] - k[1] * c[0],
        ]
    )
    return SpectralField(v.grid, out, zero_mean=True)


def laplacian(f: SpectralField) -> SpectralField:
    return SpectralField(f.grid, -f.grid.k2 * f.coeffs, zero_mean=True)


def gradient_tensor_values(v: SpectralField) -> np.ndarray:
    """Physical samples of G[i, j] = d_i v_j, shape (3, 3, n, n, n)."""
    _require_rank(v, "vector", "gradient_tensor_values")
    ik = 1j * v.grid.kvec
    g = ik[:, None] * v.coeffs[None, :]
    return np.ascontiguousarray(ifft_coeffs(g).real)


def band_limit(samples: np.ndarray, grid: GridSpec, *, zero_mean: bool = False) -> SpectralField:
    """Physical samples of a product -> truncated SpectralField."""
    return SpectralField(grid, fft_values(samples), zero_mean=zero_mean)


def dealiased_product(f: SpectralField, g: SpectralField) -> SpectralField:
    """Pointwise product truncated to the dealias cutoff.

    scalar*scalar -> scalar, scalar*vector -> vector (componentwise).
    """
    grid = require_same_grid(f.grid, g.grid)
    if f.is_vector and g.is_vector:
        raise FieldError("dealiased_product: use dealiased_dot or dealiased_cross for two vectors")
    fv = f.values()
    gv = g.values()
    if f.is_vector:
        prod = fv * gv[None]
    elif g.is_vector:
        prod = fv[None] * gv
    else:
        prod = fv * gv
    return band_limit(prod, grid)


def dealiased_dot(f: SpectralField, g: SpectralField) -> SpectralField:
    grid = require_same_grid(f.grid, g.grid)
    _require_rank(f, "vector", "dealiased_dot")
    _require_rank(g, "vector", "dealiased_dot")
    return band_limit(np.sum(f.values() * g.values(), axis=0), grid)


def cross_values(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.stack(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


def dealiased_cross(f: SpectralField, g: SpectralField) -> SpectralField:
    grid = require_same_grid(f.grid, g.grid)
    _require_rank(f, "vector", "dealiased_cross")
    _require_rank(g, "vector", "dealiased_cross")
    return band_limit(cross_values(f.values(), g.values()), grid)


def _padded_values(f: SpectralField, m: int) -> np.ndarray:
    """Physical samples of f on an m^3 grid (spectral zero padding)."""
    grid = f.grid
    K = grid.cutoff
    kr = np.arange(-K, K + 1)
    src = kr % grid.n
    dst = kr % m
    big = np.zeros(f.coeffs.shape[:-3] + (m, m, m), dtype=np.complex128)
    sub = f.coeffs[..., src[:, None, None], src[None, :, None], src[None, None, :]]
    big[..., dst[:, None, None], dst[None, :, None], dst[None, None, :]] = sub
    return ifft_coeffs(big).real


def triple_product(f: SpectralField, g: SpectralField, h: SpectralField, *, rule: str = "nested") -> SpectralField:
    """Scalar triple product f*g*h.

    rule="nested": two dealiased binary products (the recursion's convention).
    rule="half": direct product on a 2n grid, then one truncation; exact for
    cubic terms and used to validate the nested form.
    """
    grid = require_same_grid(f.grid, g.grid, h.grid)
    for x in (f, g, h):
        _require_rank(x, "scalar", "triple_product")
    if rule == "nested":
        return dealiased_product(dealiased_product(f, g), h)
    if rule != "half":
        raise FieldError(f"triple_product: unknown rule {rule!r}")

    m = 2 * grid.n
    prod = _padded_values(f, m) * _padded_values(g, m) * _padded_values(h, m)
    c = fft_values(prod)
    K = grid.cutoff
    kr = np.arange(-K, K + 1)
    src = kr % m
    dst = kr % grid.n
    out = np.zeros(grid.shape, dtype=np.complex128)
    out[dst[:, None, None], dst[None, :, None], dst[None, None, :]] = c[
        src[:, None, None], src[None, :, None], src[None, None, :]
    ]
    return SpectralField(grid, out)


def energy(v: SpectralField) -> float:
    """Kinetic energy 1/2 <|v|^2> (box average)."""
    return 0.5 * float(np.sum(np.abs(v.coeffs) ** 2))
