"""
Right-hand sides of the Cauchy-Lagrangian recursion.

All products are formed on physical samples of the cached gradient tensors
G^(m)[i, j] = d_i xi^(m)_j and truncated once per binary product.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from core.exceptions import SeriesError
from fields.operators import band_limit, cross_values
from fields.spectral import SpectralField, truncate_values

if TYPE_CHECKING:
    from taylor.series import TaylorSeries


def _require_history(s: int, series: "TaylorSeries") -> None:
    if s < 1:
        raise SeriesError(f"recursion: order must be >= 1: {s}")
    if series.order < s - 1:
        raise SeriesError(f"recursion: order {s} needs xi^(1..{s - 1}), have {series.order}")


def curl_rhs(s: int, series: "TaylorSeries") -> SpectralField:
    """-sum_k sum_{0<n<s} n grad xi^(n)_k x grad xi^(s-n)_k; omega0 at s = 1.

    The (n, s-n) and (s-n, n) terms combine to (2n - s) grad xi^(n)_k x grad xi^(s-n)_k,
    so only n < s/2 is summed.
    """
    _require_history(s, series)
    if s == 1:
        return series.omega0

    grid = series.grid
    acc = np.zeros((3,) + grid.shape, dtype=np.float64)
    for n in range(1, (s + 1) // 2):
        m = s - n
        gn = series.grad(n)
        gm = series.grad(m)
        w = float(2 * n - s)
        for k in range(3):
            acc += w * cross_values(gn[:, k], gm[:, k])
    return band_limit(-acc, grid, zero_mean=True)


def div_rhs_parts(s: int, series: "TaylorSeries") -> tuple[SpectralField, SpectralField]:
    """Quadratic and cubic parts of the divergence right side at order s."""
    _require_history(s, series)
    grid = series.grid
    if s == 1:
        zero = band_limit(np.zeros(grid.shape), grid, zero_mean=True)
        return zero, zero

    quad = np.zeros(grid.shape, dtype=np.float64)
    for n in range(1, s):
        gn = series.grad(n)
        gm = series.grad(s - n)
        for i in range(3):
            for j in range(i + 1, 3):
                quad += gn[j, i] * gm[i, j] - gn[i, i] * gm[j, j]

    cubic = np.zeros(grid.shape, dtype=np.float64)
    for l in range(1, s - 1):
        pair = cofactor_sum(series, s - l)
        cubic -= np.sum(series.grad(l)[:, 0] * pair, axis=0)

    return band_limit(quad, grid, zero_mean=True), band_limit(cubic, grid, zero_mean=True)


def div_rhs(s: int, series: "TaylorSeries") -> SpectralField:
    quad, cubic = div_rhs_parts(s, series)
    return quad + cubic


def cofactor_pair_sum(series: "TaylorSeries", r: int) -> np.ndarray:
    """Untruncated sum_{m+n=r, m,n>=1} grad xi^(m)_2 x grad xi^(n)_3 (physical samples)."""
    if r < 2 or series.order < r - 1:
        raise SeriesError(f"recursion: cofactor sum C^({r}) needs xi^(1..{r - 1}), have {series.order}")
    acc = np.zeros((3,) + series.grid.shape, dtype=np.float64)
    for m in range(1, r):
        acc += cross_values(series.grad(m)[:, 1], series.grad(r - m)[:, 2])
    return acc


def cofactor_sum(series: "TaylorSeries", r: int) -> np.ndarray:
    """Truncated C^(r), from the cache when present."""
    if 2 <= r and r - 2 < len(series.cofactor_sums):
        return series.cofactor_sums[r - 2]
    return truncate_values(cofactor_pair_sum(series, r), series.grid)
