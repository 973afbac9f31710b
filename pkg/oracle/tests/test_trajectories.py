import math

import numpy as np
import pytest

from core.exceptions import OracleError
from experiments.presets import constant, shear, taylor_green
from fields.grid import make_grid
from oracle.euler import euler_solve
from oracle.trajectories import (
    TrajectorySet,
    compare_trajectories,
    integrate_trajectories,
    periodic_distance,
    seed_points,
    series_coefficients_at,
    series_trajectories,
)
from stepper.resample import periodic_difference
from taylor.series import build_series


def test_seed_points_are_deterministic():
    a = seed_points(10, seed=3)
    assert a.shape == (10, 3)
    assert np.array_equal(a, seed_points(10, seed=3))
    assert not np.array_equal(a, seed_points(10, seed=4))
    assert np.all((a >= 0.0) & (a < 2 * np.pi))
    with pytest.raises(OracleError):
        seed_points(0)


def test_periodic_distance_wraps():
    a = np.array([[0.1, 0.0, 0.0]])
    b = np.array([[2 * np.pi - 0.1, 0.0, 0.0]])
    assert periodic_distance(a, b)[0] == pytest.approx(0.2, abs=1e-14)


def test_constant_flow_paths_are_straight_lines():
    v0 = constant(make_grid(8))
    hist = euler_solve(v0, 0.2)
    seeds = seed_points(8, seed=1)
    times = np.linspace(0.0, 0.2, 5)
    traj = integrate_trajectories(hist, seeds, times)
    c = np.real(v0.mean)
    expected = np.mod(seeds[:, None, :] + times[None, :, None] * c, 2 * np.pi)
    assert np.max(periodic_distance(traj.positions, expected)) <= 1e-12


def test_shear_paths_match_exact_solution():
    v0 = shear(make_grid(16))
    hist = euler_solve(v0, 0.1)
    seeds = seed_points(16, seed=2)
    times = np.array([0.0, 0.05, 0.1])
    traj = integrate_trajectories(hist, seeds, times)
    expected = seeds[:, None, :].repeat(3, axis=1)
    expected[:, :, 0] += times[None, :] * np.sin(seeds[:, None, 1])
    assert np.max(periodic_distance(traj.positions, expected)) <= 1e-10


def test_series_paths_for_shear_agree_with_oracle():
    v0 = shear(make_grid(16))
    seeds = seed_points(16, seed=5)
    times = np.linspace(0.0, 0.1, 4)
    a = series_trajectories(build_series(v0, 4), seeds, times)
    b = integrate_trajectories(euler_solve(v0, 0.1), seeds, times)
    assert compare_trajectories(a, b).max_error <= 1e-10


def test_series_paths_are_polynomials_in_time():
    S = 4
    series = build_series(taylor_green(make_grid(16)), S)
    seeds = seed_points(6, seed=0)
    times = np.linspace(0.0, 0.4, S + 1)
    traj = series_trajectories(series, seeds, times)
    coeffs = series_coefficients_at(series, seeds)
    for p in range(seeds.shape[0]):
        for j in range(3):
            disp = periodic_difference(traj.positions[p, :, j] - seeds[p, j])
            fit = np.polyfit(times, disp, S)[::-1]
            assert abs(fit[0]) <= 1e-8
            assert np.max(np.abs(fit[1:] - coeffs[:, p, j])) <= 1e-8


def test_times_outside_history_rejected():
    hist = euler_solve(shear(make_grid(8)), 0.05)
    with pytest.raises(OracleError):
        integrate_trajectories(hist, seed_points(2), np.array([0.0, 0.1]))
    with pytest.raises(OracleError):
        integrate_trajectories(hist, seed_points(2), np.array([0.04, 0.01]))


def test_compare_identical_and_shifted_sets():
    seeds = seed_points(5, seed=9)
    times = np.array([0.0, 1.0])
    pos = np.repeat(seeds[:, None, :], 2, axis=1)
    a = TrajectorySet(seeds=seeds, times=times, positions=pos)
    assert compare_trajectories(a, a).max_error == 0.0

    shifted = pos.copy()
    shifted[:, :, 0] += math.pi
    b = TrajectorySet(seeds=seeds, times=times, positions=shifted)
    cmp = compare_trajectories(b, a)
    assert cmp.max_error == pytest.approx(math.pi, abs=1e-12)
    assert list(cmp.frame().columns) == ["t", "max_err", "rms_err", "rel_err"]
    assert cmp.rel_err[0] == math.inf


def test_compare_rejects_mismatched_seeds():
    times = np.array([0.0])
    a = TrajectorySet(seeds=seed_points(3, 0), times=times, positions=seed_points(3, 0)[:, None, :])
    b = TrajectorySet(seeds=seed_points(3, 1), times=times, positions=seed_points(3, 1)[:, None, :])
    with pytest.raises(OracleError):
        compare_trajectories(a, b)


def test_trajectory_frame_layout():
    seeds = seed_points(2, 0)
    traj = TrajectorySet(seeds=seeds, times=np.array([0.0, 0.5]), positions=np.repeat(seeds[:, None, :], 2, axis=1))
    df = traj.frame()
    assert list(df.columns) == ["seed", "t", "x1", "x2", "x3"]
    assert df["seed"].tolist() == [0, 0, 1, 1]
