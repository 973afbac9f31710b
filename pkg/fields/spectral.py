from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.fft as sfft

from core.exceptions import FieldError
from fields.grid import GridSpec, require_same_grid

Rank = Literal["scalar", "vector"]

_SPATIAL_AXES = (-3, -2, -1)
_HERMITIAN_RTOL = 1e-8


def _reflect(coeffs: np.ndarray) -> np.ndarray:
    """Array indexed by -k: out[..., k] = coeffs[..., -k mod n]."""
    out = np.flip(coeffs, axis=_SPATIAL_AXES)
    return np.roll(out, 1, axis=_SPATIAL_AXES)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients of a real scalar or 3-vector field.

    Construction projects onto the Hermitian (real-field) subspace, zeroes
    every mode beyond the dealias cutoff and, when `zero_mean` is set, the
    k = 0 mode. A coefficient array that is far from Hermitian is rejected.
    """

    grid: GridSpec
    coeffs: np.ndarray
    zero_mean: bool = False

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs)
        n = self.grid.n
        if c.shape not in ((n, n, n), (3, n, n, n)):
            raise FieldError(f"field: coefficient shape {c.shape} does not match grid n={n}")

        c = np.array(c, dtype=np.complex128, copy=True)
        c *= self.grid.dealias_mask

        reflected = np.conj(_reflect(c))
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        deviation = float(np.max(np.abs(c - reflected))) if c.size else 0.0
        if deviation > _HERMITIAN_RTOL * max(1.0, scale):
            raise FieldError(f"field: coefficients are not Hermitian (deviation={deviation:.3e})")
        c = 0.5 * (c + reflected)

        if self.zero_mean:
            c[..., 0, 0, 0] = 0.0

        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def rank(self) -> Rank:
        return "vector" if self.coeffs.ndim == 4 else "scalar"

    @property
    def is_vector(self) -> bool:
        return self.coeffs.ndim == 4

    @property
    def mean(self) -> np.ndarray | complex:
        return self.coeffs[..., 0, 0, 0].copy() if self.is_vector else complex(self.coeffs[0, 0, 0])

    def component(self, i: int) -> "SpectralField":
        if not self.is_vector:
            raise FieldError("field: component() on a scalar field")
        return SpectralField(self.grid, self.coeffs[i], zero_mean=self.zero_mean)

    def components(self) -> list["SpectralField"]:
        return [self.component(i) for i in range(3)]

    def values(self) -> np.ndarray:
        return inverse_transform(self)

    def max_amplitude(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def sup_norm(self) -> float:
        """Max over grid points (and components) of |value|."""
        return float(np.max(np.abs(self.values())))

    def l2_norm(self) -> float:
        """Spectral L2 norm, sqrt(sum |c_k|^2) = RMS of the physical field."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def without_mean(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs, zero_mean=True)

    def with_coeffs(self, coeffs: np.ndarray, *, zero_mean: bool | None = None) -> "SpectralField":
        zm = self.zero_mean if zero_mean is None else zero_mean
        return SpectralField(self.grid, coeffs, zero_mean=zm)

    def _check_compatible(self, other: "SpectralField") -> None:
        require_same_grid(self.grid, other.grid)
        if self.rank != other.rank:
            raise FieldError(f"field: rank mismatch ({self.rank} vs {other.rank})")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_compatible(other)
        return SpectralField(self.grid, self.coeffs + other.coeffs, zero_mean=self.zero_mean and other.zero_mean)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_compatible(other)
        return SpectralField(self.grid, self.coeffs - other.coeffs, zero_mean=self.zero_mean and other.zero_mean)

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs, zero_mean=self.zero_mean)

    def __mul__(self, scalar: float) -> "SpectralField":
        if not isinstance(scalar, (int, float, np.floating, np.integer)):
            raise FieldError("field: only real scalar multiplication is supported; use dealiased_product")
        return SpectralField(self.grid, self.coeffs * float(scalar), zero_mean=self.zero_mean)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "SpectralField":
        return self * (1.0 / float(scalar))


def zeros(grid: GridSpec, rank: Rank = "scalar") -> SpectralField:
    shape = grid.shape if rank == "scalar" else (3,) + grid.shape
    return SpectralField(grid, np.zeros(shape, dtype=np.complex128), zero_mean=True)


def fft_values(samples: np.ndarray) -> np.ndarray:
    """Forward FFT over the three spatial axes, scaled so coeff(0) is the mean."""
    n3 = float(np.prod(samples.shape[-3:]))
    return sfft.fftn(samples, axes=_SPATIAL_AXES) / n3


def ifft_coeffs(coeffs: np.ndarray) -> np.ndarray:
    """Inverse of fft_values; returns complex samples."""
    n3 = float(np.prod(coeffs.shape[-3:]))
    return sfft.ifftn(coeffs, axes=_SPATIAL_AXES) * n3


def forward_transform(samples: np.ndarray, grid: GridSpec, *, zero_mean: bool = False) -> SpectralField:
    arr = np.asarray(samples)
    if arr.shape not in (grid.shape, (3,) + grid.shape):
        raise FieldError(f"forward_transform: sample shape {arr.shape} does not match grid n={grid.n}")
    if np.iscomplexobj(arr):
        raise FieldError("forward_transform: samples must be real")
    return SpectralField(grid, fft_values(arr.astype(np.float64)), zero_mean=zero_mean)


def inverse_transform(f: SpectralField) -> np.ndarray:
    return np.ascontiguousarray(ifft_coeffs(f.coeffs).real)


def truncate_values(samples: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Physical samples -> band-limited physical samples (2/3-rule projection)."""
    c = fft_values(samples) * grid.dealias_mask
    return np.ascontiguousarray(ifft_coeffs(c).real)
