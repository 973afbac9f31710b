from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from core.exceptions import SeriesError
from taylor.series import TaylorSeries

MIN_ORDER = 4
# relative to |xi^(1)|^s, so the test is blind to the amplitude of v0
ZERO_TOL = 1e-14


def estimate_radius_from_norms(norms: Iterable[float], *, zero_tol: float = ZERO_TOL) -> float:
    """Root-test radius: median over the last half of orders of |xi^(s)|^(-1/s).

    `norms[s-1]` is the sup-norm of xi^(s). An order counts as zero when
    |xi^(s)| / |xi^(1)|^s <= zero_tol; an all-zero tail gives +inf.
    """
    arr = np.asarray(list(norms), dtype=np.float64)
    S = arr.size
    if S == 0:
        raise SeriesError("radius: no coefficient norms")
    lead = float(arr[0])
    if not (lead > 0.0 and math.isfinite(lead)):
        return math.inf
    estimates = []
    for s in range(S // 2 + 1, S + 1):
        v = float(arr[s - 1])
        if not math.isfinite(v):
            continue
        # compare in log space; lead**s under- or overflows at high order
        if v <= 0.0 or math.log(v) - s * math.log(lead) <= math.log(zero_tol):
            continue
        estimates.append(v ** (-1.0 / s))
    if not estimates:
        return math.inf
    return float(np.median(estimates))


def estimate_radius(series: TaylorSeries, *, zero_tol: float = ZERO_TOL) -> float:
    if series.order < MIN_ORDER:
        raise SeriesError(f"radius: need order >= {MIN_ORDER}, have {series.order}")
    return estimate_radius_from_norms(series.sup_norms(), zero_tol=zero_tol)


def cumulative_radius(norms: Iterable[float], *, zero_tol: float = ZERO_TOL) -> list[float]:
    """Radius estimate using orders 1..s, for each s; NaN below MIN_ORDER."""
    arr = list(norms)
    return [
        estimate_radius_from_norms(arr[:s], zero_tol=zero_tol) if s >= MIN_ORDER else math.nan
        for s in range(1, len(arr) + 1)
    ]
