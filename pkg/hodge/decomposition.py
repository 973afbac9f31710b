from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from core.exceptions import FieldError
from fields.grid import require_same_grid
from fields.operators import curl, divergence, gradient
from fields.spectral import SpectralField
from hodge.poisson import MEAN_TOL, inverse_laplacian

GAUGE_TOL = 1e-10


@dataclass(frozen=True)
class Potentials:
    """xi = curl(a) + grad(b) with div(a) = 0 and zero box averages."""

    a: SpectralField
    b: SpectralField

    def __post_init__(self) -> None:
        require_same_grid(self.a.grid, self.b.grid)
        if self.a.rank != "vector" or self.b.rank != "scalar":
            raise FieldError("potentials: a must be a vector field and b a scalar field")
        gauge = divergence(self.a).max_amplitude()
        if gauge > GAUGE_TOL * max(1.0, self.a.max_amplitude()):
            raise FieldError(f"potentials: gauge div(a)=0 violated (max={gauge:.3e})")
        means = np.abs(np.append(self.a.coeffs[:, 0, 0, 0], self.b.coeffs[0, 0, 0]))
        if float(np.max(means)) > MEAN_TOL * max(1.0, self.a.max_amplitude(), self.b.max_amplitude()):
            raise FieldError("potentials: potentials must have zero box average")


def hodge_decompose(xi: SpectralField, *, mean_tol: float = MEAN_TOL) -> Potentials:
    if xi.rank != "vector":
        raise FieldError("hodge_decompose: expected a vector field")
    mean = float(np.max(np.abs(xi.coeffs[:, 0, 0, 0])))
    if mean > mean_tol * max(1.0, xi.max_amplitude()):
        raise FieldError(f"hodge_decompose: input must have zero mean (|mean|={mean:.3e})")
    b = inverse_laplacian(divergence(xi))
    a = -inverse_laplacian(curl(xi))
    return Potentials(a=a, b=b)


def assemble_from_potentials(p: Potentials) -> SpectralField:
    return (curl(p.a) + gradient(p.b)).without_mean()


def leray_project(v: SpectralField) -> SpectralField:
    """Remove the gradient part of v in wavenumber space; the mean is kept."""
    if v.rank != "vector":
        raise FieldError("leray_project: expected a vector field")
    k = v.grid.kvec
    kdotv = np.sum(k * v.coeffs, axis=0)
    out = v.coeffs - k * (kdotv * v.grid.inv_k2)[None]
    return SpectralField(v.grid, out, zero_mean=v.zero_mean)
