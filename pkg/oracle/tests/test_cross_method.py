import numpy as np
import pytest

from experiments.presets import taylor_green
from fields.grid import make_grid
from fields.operators import energy
from oracle.euler import euler_solve
from oracle.trajectories import compare_trajectories, integrate_trajectories, seed_points, series_trajectories
from taylor.series import build_series

pytestmark = pytest.mark.slow


def test_taylor_paths_match_oracle_paths():
    v0 = taylor_green(make_grid(32))
    seeds = seed_points(64, seed=0)
    times = np.linspace(0.0, 0.1, 11)
    taylor = series_trajectories(build_series(v0, 16), seeds, times)
    oracle = integrate_trajectories(euler_solve(v0, 0.1), seeds, times)
    assert compare_trajectories(taylor, oracle).max_relative_error <= 1e-6


def test_oracle_conserves_energy_at_production_size():
    v0 = taylor_green(make_grid(32))
    hist = euler_solve(v0, 0.2)
    e0 = energy(v0)
    assert abs(energy(hist.velocity(-1)) - e0) / e0 <= 1e-8


def test_agreement_improves_under_refinement():
    v0 = taylor_green(make_grid(32))
    seeds = seed_points(16, seed=1)
    times = np.linspace(0.0, 0.2, 5)
    errs = []
    for order, dt in ((4, 0.02), (6, 0.01), (8, 0.005)):
        taylor = series_trajectories(build_series(v0, order), seeds, times)
        oracle = integrate_trajectories(euler_solve(v0, 0.2, dt=dt), seeds, times)
        errs.append(compare_trajectories(taylor, oracle).max_error)
    assert errs[0] > errs[1] > errs[2]
