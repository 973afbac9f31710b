from __future__ import annotations

import pandas as pd

from taylor.radius import cumulative_radius
from taylor.series import TaylorSeries

DIAGNOSTIC_COLUMNS = ["s", "xi_sup", "lap_a_sup", "lap_b_sup", "radius_estimate"]
HOLDER_COLUMNS = ["lap_a_holder", "lap_b_holder"]


def coefficient_table(series: TaylorSeries) -> pd.DataFrame:
    """One row per order s with the stored norm diagnostics.

    A uniform translation has a single-term series and gets a single row.
    """
    if series.is_translation:
        series = series.truncated(1)
    radius = cumulative_radius(series.sup_norms())
    rows = []
    for nm, r in zip(series.norms, radius):
        row = {
            "s": nm.s,
            "xi_sup": nm.xi_sup,
            "lap_a_sup": nm.lap_a_sup,
            "lap_b_sup": nm.lap_b_sup,
            "radius_estimate": r,
        }
        if series.holder_gamma is not None:
            row["lap_a_holder"] = nm.lap_a_holder
            row["lap_b_holder"] = nm.lap_b_holder
        rows.append(row)
    cols = DIAGNOSTIC_COLUMNS + (HOLDER_COLUMNS if series.holder_gamma is not None else [])
    return pd.DataFrame(rows, columns=cols)
