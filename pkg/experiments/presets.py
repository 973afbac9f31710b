from __future__ import annotations

import math
from typing import Callable

import numpy as np

from core.config import RunConfig
from core.exceptions import ConfigError, FieldError
from fields.grid import GridSpec, make_grid
from fields.io import load_field
from fields.operators import divergence
from fields.spectral import SpectralField, forward_transform
from hodge.decomposition import leray_project

PRESET_DIV_TOL = 1e-12
CONSTANT_VELOCITY = (1.0, -0.5, 0.25)
ABC_COEFFS = (1.0, 1.0, 1.0)
RANDOM_MAX_MODE = 3


def constant(grid: GridSpec, seed: int = 0) -> SpectralField:
    vals = np.stack([np.full(grid.shape, c) for c in CONSTANT_VELOCITY])
    return forward_transform(vals, grid)


def shear(grid: GridSpec, seed: int = 0) -> SpectralField:
    _, q2, _ = grid.points
    zero = np.zeros(grid.shape)
    return forward_transform(np.stack([np.sin(q2), zero, zero]), grid)


def taylor_green(grid: GridSpec, seed: int = 0) -> SpectralField:
    x, y, z = grid.points
    u = np.sin(x) * np.cos(y) * np.cos(z)
    v = -np.cos(x) * np.sin(y) * np.cos(z)
    return forward_transform(np.stack([u, v, np.zeros(grid.shape)]), grid)


def abc(grid: GridSpec, seed: int = 0) -> SpectralField:
    a, b, c = ABC_COEFFS
    x, y, z = grid.points
    return forward_transform(
        np.stack(
            [
                a * np.sin(z) + c * np.cos(y),
                b * np.sin(x) + a * np.cos(z),
                c * np.sin(y) + b * np.cos(x),
            ]
        ),
        grid,
    )


def random_solenoidal(grid: GridSpec, seed: int = 0) -> SpectralField:
    """Seeded solenoidal field on the modes |k_i| <= 3, unit RMS.

    Coefficients are drawn on that fixed index set in a fixed order, so one
    seed gives the same field on every grid whose cutoff reaches mode 3.
    """
    m = RANDOM_MAX_MODE
    rng = np.random.default_rng(int(seed))
    shape = (3,) + (2 * m + 1,) * 3
    draw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    ks = np.arange(-m, m + 1)
    kx, ky, kz = np.meshgrid(ks, ks, ks, indexing="ij")
    draw *= np.exp(-0.5 * (kx * kx + ky * ky + kz * kz) / float(m) ** 2)
    # pair k with -k so the spectrum is Hermitian
    draw = 0.5 * (draw + np.conj(draw[:, ::-1, ::-1, ::-1]))

    c = np.zeros((3,) + grid.shape, dtype=np.complex128)
    idx = np.mod(ks, grid.n)
    c[np.ix_(np.arange(3), idx, idx, idx)] = draw
    v = leray_project(SpectralField(grid, c, zero_mean=True))
    rms = v.l2_norm()
    if rms == 0.0:
        raise FieldError("presets: random field vanished")
    return v / rms


PRESETS: dict[str, Callable[[GridSpec, int], SpectralField]] = {
    "constant": constant,
    "shear": shear,
    "taylor-green": taylor_green,
    "abc": abc,
    "random": random_solenoidal,
}


def build_preset(name: str, grid: GridSpec, seed: int = 0) -> SpectralField:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ConfigError(f"Unknown preset: {name} (expected one of {', '.join(sorted(PRESETS))})") from None
    v = builder(grid, seed)
    div = divergence(v).max_amplitude()
    if div > PRESET_DIV_TOL:
        raise FieldError(f"presets: {name} is not divergence-free (max |div| = {div:.3e})")
    return v


def load_initial_field(cfg: RunConfig) -> SpectralField:
    """Initial velocity from cfg.field_file when set, else from cfg.preset."""
    if cfg.field_file is not None:
        v = load_field(cfg.field_file)
        if v.rank != "vector":
            raise ConfigError(f"field_file must hold a vector field: {cfg.field_file}")
        if v.grid.n != cfg.n:
            raise ConfigError(f"field_file grid n={v.grid.n} does not match n={cfg.n}")
        if not math.isclose(v.grid.dealias_fraction, cfg.dealias_fraction, rel_tol=1e-12):
            raise ConfigError(
                f"field_file dealias_fraction={v.grid.dealias_fraction:.17g} "
                f"does not match dealias_fraction={cfg.dealias_fraction:.17g}"
            )
        div = divergence(v).max_amplitude()
        if div > PRESET_DIV_TOL:
            raise ConfigError(f"field_file is not divergence-free (max |div| = {div:.3e}): {cfg.field_file}")
        return v
    return build_preset(cfg.preset, make_grid(cfg.n, cfg.dealias_fraction), cfg.seed)
