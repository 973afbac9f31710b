from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.exceptions import FieldError

BOX_LENGTH = 2.0 * math.pi


@dataclass(frozen=True)
class GridSpec:
    n: int
    dealias_fraction: float = 2.0 / 3.0
    length: float = BOX_LENGTH

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise FieldError(f"grid: n must be an integer: {self.n!r}")
        if self.n < 8 or self.n % 2 != 0:
            raise FieldError(f"grid: n must be even and >= 8: {self.n}")
        if not 0.0 < float(self.dealias_fraction) <= 1.0:
            raise FieldError(f"grid: dealias_fraction must be in (0, 1]: {self.dealias_fraction}")
        if self.length != BOX_LENGTH:
            raise FieldError(f"grid: box length is fixed to 2pi, got {self.length}")
        if self.cutoff < 2:
            raise FieldError(f"grid: dealias cutoff K={self.cutoff} < 2 (n={self.n})")

    @property
    def cutoff(self) -> int:
        return int(math.floor(float(self.dealias_fraction) * (self.n // 2) + 1e-12))

    @property
    def spacing(self) -> float:
        return self.length / self.n

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.n, self.n)

    @cached_property
    def k1d(self) -> np.ndarray:
        """Integer wavenumbers in FFT order, values in [-n/2, n/2)."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n).round().astype(np.int64)

    @cached_property
    def kvec(self) -> np.ndarray:
        k = self.k1d.astype(np.float64)
        kx, ky, kz = np.meshgrid(k, k, k, indexing="ij")
        out = np.stack([kx, ky, kz])
        out.setflags(write=False)
        return out

    @cached_property
    def k2(self) -> np.ndarray:
        out = np.sum(self.kvec * self.kvec, axis=0)
        out.setflags(write=False)
        return out

    @cached_property
    def inv_k2(self) -> np.ndarray:
        """1/|k|^2 with the zero mode mapped to 0."""
        k2 = self.k2
        out = np.zeros_like(k2)
        nz = k2 > 0
        out[nz] = 1.0 / k2[nz]
        out.setflags(write=False)
        return out

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        # the Nyquist mode -n/2 has no conjugate partner and is always dropped
        keep = (np.abs(self.k1d) <= self.cutoff) & (self.k1d != -(self.n // 2))
        out = keep[:, None, None] & keep[None, :, None] & keep[None, None, :]
        out.setflags(write=False)
        return out

    @cached_property
    def points(self) -> np.ndarray:
        """Lagrangian grid coordinates, shape (3, n, n, n)."""
        q = np.arange(self.n, dtype=np.float64) * self.spacing
        out = np.stack(np.meshgrid(q, q, q, indexing="ij"))
        out.setflags(write=False)
        return out


def make_grid(n: int, dealias_fraction: float = 2.0 / 3.0) -> GridSpec:
    if isinstance(dealias_fraction, bool) or not isinstance(dealias_fraction, (int, float)):
        raise FieldError(f"grid: dealias_fraction must be a number: {dealias_fraction!r}")
    return GridSpec(n=n, dealias_fraction=float(dealias_fraction))


def require_same_grid(*grids: GridSpec) -> GridSpec:
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise FieldError(f"grid mismatch: {first} vs {g}")
    return first
