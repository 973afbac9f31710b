from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from core.exceptions import BoundError
from fields.spectral import SpectralField

DEFAULT_RADIUS_FRACTION = 0.25
SUBSAMPLE_ABOVE_N = 64
MAX_OFFSETS = 2048


@lru_cache(maxsize=32)
def offset_set(n: int, radius_fraction: float = DEFAULT_RADIUS_FRACTION) -> tuple[tuple[int, int, int], ...]:
    """Integer grid offsets d != 0 with |d| h <= radius_fraction * 2pi, one of each (d, -d).

    Sorted by length, then lexicographically. For n > 64 the set is thinned
    to at most MAX_OFFSETS entries by a fixed stride.
    """
    r = radius_fraction * n
    R = int(math.floor(r + 1e-12))
    out: list[tuple[int, int, int]] = []
    for a in range(-R, R + 1):
        for b in range(-R, R + 1):
            for c in range(-R, R + 1):
                if (a, b, c) == (0, 0, 0) or a * a + b * b + c * c > r * r + 1e-9:
                    continue
                # half space: first nonzero coordinate positive
                first = a if a != 0 else (b if b != 0 else c)
                if first > 0:
                    out.append((a, b, c))
    out.sort(key=lambda d: (d[0] ** 2 + d[1] ** 2 + d[2] ** 2, d))
    if n > SUBSAMPLE_ABOVE_N and len(out) > MAX_OFFSETS:
        stride = int(math.ceil(len(out) / MAX_OFFSETS))
        out = out[::stride]
    return tuple(out)


def _check_gamma(gamma: float) -> None:
    if not 0.0 < float(gamma) < 1.0:
        raise BoundError(f"holder: gamma must be in (0, 1): {gamma}")


def holder_seminorm_values(
    values: np.ndarray,
    gamma: float,
    spacing: float,
    *,
    radius_fraction: float = DEFAULT_RADIUS_FRACTION,
) -> float:
    """max over offsets of max_q |w(q+d) - w(q)| / |d|^gamma for one scalar sample array."""
    _check_gamma(gamma)
    n = values.shape[-1]
    best = 0.0
    for d in offset_set(n, float(radius_fraction)):
        dist = spacing * math.sqrt(d[0] ** 2 + d[1] ** 2 + d[2] ** 2)
        shifted = np.roll(values, shift=(-d[0], -d[1], -d[2]), axis=(0, 1, 2))
        q = float(np.max(np.abs(shifted - values))) / dist**gamma
        if q > best:
            best = q
    return best


def holder_norm(
    w: SpectralField,
    gamma: float,
    *,
    radius_fraction: float = DEFAULT_RADIUS_FRACTION,
) -> float:
    """Discrete |w|_{0,gamma}: sup-norm + seminorm, max over components."""
    _check_gamma(gamma)
    vals = w.values()
    comps = vals if w.is_vector else vals[None]
    best = 0.0
    for c in comps:
        sup = float(np.max(np.abs(c)))
        semi = holder_seminorm_values(c, gamma, w.grid.spacing, radius_fraction=radius_fraction)
        best = max(best, sup + semi)
    return best
