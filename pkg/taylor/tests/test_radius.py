import math

import numpy as np
import pytest

from core.exceptions import SeriesError
from experiments.presets import constant, shear, taylor_green
from fields.grid import make_grid
from taylor.radius import cumulative_radius, estimate_radius, estimate_radius_from_norms
from taylor.report import DIAGNOSTIC_COLUMNS, HOLDER_COLUMNS, coefficient_table
from taylor.series import build_series


def test_geometric_norms_recover_radius():
    r = 0.37
    norms = [r ** (-s) for s in range(1, 13)]
    assert estimate_radius_from_norms(norms) == pytest.approx(r, rel=1e-12)


def test_perturbed_geometric_norms_within_one_percent():
    r = 0.8
    rng = np.random.default_rng(0)
    norms = [r ** (-s) * (1.0 + 0.05 * rng.uniform(-1, 1)) for s in range(1, 21)]
    assert abs(estimate_radius_from_norms(norms) - r) <= 0.01 * r


def test_zero_tail_gives_infinite_radius():
    assert estimate_radius_from_norms([1.0, 0.0, 0.0, 0.0]) == math.inf
    assert estimate_radius_from_norms([0.0, 0.0, 0.0, 0.0]) == math.inf
    # roundoff relative to |xi^(1)|^s
    assert estimate_radius_from_norms([1e-3, 1e-21, 1e-24, 1e-27]) == math.inf
    assert estimate_radius(build_series(shear(make_grid(8)), 6)) == math.inf
    assert estimate_radius(build_series(constant(make_grid(8)), 4)) == math.inf


def test_radius_needs_enough_orders():
    with pytest.raises(SeriesError):
        estimate_radius(build_series(taylor_green(make_grid(8)), 3))
    with pytest.raises(SeriesError):
        estimate_radius_from_norms([])


def test_cumulative_radius_is_nan_below_four():
    out = cumulative_radius([2.0 ** s for s in range(1, 7)])
    assert all(math.isnan(x) for x in out[:3])
    assert out[-1] == pytest.approx(0.5, rel=1e-12)


def test_taylor_green_radius_is_finite_and_positive():
    r = estimate_radius(build_series(taylor_green(make_grid(16)), 8))
    assert 0.0 < r < math.inf


def test_coefficient_table_columns():
    series = build_series(taylor_green(make_grid(8)), 5)
    df = coefficient_table(series)
    assert list(df.columns) == DIAGNOSTIC_COLUMNS
    assert df["s"].tolist() == [1, 2, 3, 4, 5]
    assert df["radius_estimate"].isna().sum() == 3

    with_holder = coefficient_table(build_series(taylor_green(make_grid(8)), 2, holder_gamma=0.5))
    assert list(with_holder.columns) == DIAGNOSTIC_COLUMNS + HOLDER_COLUMNS


def test_small_amplitude_tail_is_not_treated_as_zero():
    r = estimate_radius_from_norms([1e-3, 1e-7, 1e-11, 1e-15])
    assert math.isfinite(r)
    assert r > 1e3


@pytest.mark.parametrize("eps", [0.1, 0.01, 1e-3])
def test_radius_scales_inversely_with_amplitude(eps):
    v0 = taylor_green(make_grid(16))
    r1 = estimate_radius(build_series(v0, 12))
    r_eps = estimate_radius(build_series(v0 * eps, 12))
    assert r_eps == pytest.approx(r1 / eps, rel=1e-6)


def test_uniform_translation_has_single_row_table():
    series = build_series(constant(make_grid(8)), 6)
    assert series.is_translation
    assert not build_series(shear(make_grid(8)), 2).is_translation
    df = coefficient_table(series)
    assert df["s"].tolist() == [1]
