import numpy as np
import pytest

from core.exceptions import StepperError
from experiments.presets import taylor_green
from fields.grid import make_grid
from fields.spectral import forward_transform
from stepper.resample import invert_map, periodic_difference, resample_to_grid


def _displacement(g, comps):
    return forward_transform(np.stack(comps), g)


def test_zero_displacement_leaves_values_unchanged():
    g = make_grid(16)
    v = taylor_green(g)
    xi = _displacement(g, [np.zeros(g.shape)] * 3)
    res = resample_to_grid(xi, v)
    assert res.iterations == 1
    assert np.max(np.abs(res.values.coeffs - v.coeffs)) <= 1e-12


def test_constant_shift_is_exact():
    g = make_grid(16)
    c = (0.3, -0.2, 0.1)
    xi = _displacement(g, [np.full(g.shape, ci) for ci in c])
    v = taylor_green(g)
    res = resample_to_grid(xi, v)
    x, y, z = g.points
    xs, ys, zs = x - c[0], y - c[1], z - c[2]
    expected = np.stack(
        [np.sin(xs) * np.cos(ys) * np.cos(zs), -np.cos(xs) * np.sin(ys) * np.cos(zs), np.zeros(g.shape)]
    )
    assert np.max(np.abs(res.values.values() - expected)) <= 1e-10


def test_sinusoidal_map_inverse():
    g = make_grid(16)
    x, _, _ = g.points
    zero = np.zeros(g.shape)
    xi = _displacement(g, [0.1 * np.sin(x), zero, zero])
    rng = np.random.default_rng(7)
    q_true = rng.uniform(0.0, 2 * np.pi, size=(3, 50))
    targets = q_true.copy()
    targets[0] += 0.1 * np.sin(q_true[0])
    q, it, worst = invert_map(xi, targets)
    assert it <= 50
    assert worst <= 1e-11
    assert np.max(np.abs(periodic_difference(q - q_true))) <= 1e-8


def test_non_convergence_raises():
    g = make_grid(16)
    x, _, _ = g.points
    zero = np.zeros(g.shape)
    xi = _displacement(g, [2.0 * np.sin(x), zero, zero])
    with pytest.raises(StepperError, match="did not converge"):
        invert_map(xi, g.points.reshape(3, -1), max_iter=5)


def test_periodic_difference_wraps():
    d = periodic_difference(np.array([2 * np.pi - 0.1, -2 * np.pi + 0.1, 0.5]))
    assert np.allclose(d, [-0.1, 0.1, 0.5], atol=1e-14)


def test_jacobian_deviation_is_reported():
    g = make_grid(8)
    v = taylor_green(g)
    xi = _displacement(g, [np.zeros(g.shape)] * 3)
    det = np.full(g.shape, 1.5)
    res = resample_to_grid(xi, v, det=det)
    assert res.max_det_deviation == pytest.approx(0.5)
