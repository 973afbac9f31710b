import numpy as np
import pytest

from core.exceptions import FieldError
from fields.grid import make_grid
from fields.operators import (
    curl,
    dealiased_cross,
    dealiased_dot,
    dealiased_product,
    divergence,
    energy,
    gradient,
    gradient_tensor_values,
    laplacian,
    triple_product,
)
from fields.spectral import SpectralField, forward_transform


def _tg(g):
    x, y, z = g.points
    return forward_transform(
        np.stack([np.sin(x) * np.cos(y) * np.cos(z), -np.cos(x) * np.sin(y) * np.cos(z), np.zeros(g.shape)]), g
    )


def test_gradient_of_sine():
    g = make_grid(16)
    x, _, _ = g.points
    grad = gradient(forward_transform(np.sin(x), g)).values()
    assert np.max(np.abs(grad[0] - np.cos(x))) <= 1e-12
    assert np.max(np.abs(grad[1:])) <= 1e-12


def test_curl_of_shear():
    g = make_grid(16)
    _, y, _ = g.points
    zero = np.zeros(g.shape)
    w = curl(forward_transform(np.stack([np.sin(y), zero, zero]), g)).values()
    assert np.max(np.abs(w[2] + np.cos(y))) <= 1e-12
    assert np.max(np.abs(w[:2])) <= 1e-12


def test_taylor_green_is_solenoidal():
    g = make_grid(16)
    assert divergence(_tg(g)).max_amplitude() <= 1e-14


def test_laplacian_of_mode():
    g = make_grid(16)
    x, _, _ = g.points
    lap = laplacian(forward_transform(np.sin(2 * x), g)).values()
    assert np.max(np.abs(lap + 4 * np.sin(2 * x))) <= 1e-12


def test_dealiased_product_is_exact_inside_band():
    g = make_grid(16)
    x, _, _ = g.points
    s = forward_transform(np.sin(x), g)
    p = dealiased_product(s, s).values()
    assert np.max(np.abs(p - 0.5 * (1 - np.cos(2 * x)))) <= 1e-12


def test_vector_products():
    g = make_grid(16)
    v = _tg(g)
    vals = v.values()
    dot = dealiased_dot(v, v).values()
    assert np.max(np.abs(dot - np.sum(vals * vals, axis=0))) <= 1e-12
    assert dealiased_cross(v, v).max_amplitude() <= 1e-15
    with pytest.raises(FieldError):
        dealiased_product(v, v)


def test_triple_product_rules_agree_for_low_modes():
    g = make_grid(16)
    x, y, z = g.points
    f = forward_transform(np.sin(x), g)
    h = forward_transform(np.sin(y), g)
    k = forward_transform(np.sin(z), g)
    nested = triple_product(f, h, k).values()
    half = triple_product(f, h, k, rule="half").values()
    exact = np.sin(x) * np.sin(y) * np.sin(z)
    assert np.max(np.abs(nested - exact)) <= 1e-12
    assert np.max(np.abs(half - exact)) <= 1e-12


def test_gradient_tensor_layout():
    g = make_grid(16)
    _, y, _ = g.points
    zero = np.zeros(g.shape)
    G = gradient_tensor_values(forward_transform(np.stack([np.sin(y), zero, zero]), g))
    assert G.shape == (3, 3, 16, 16, 16)
    # G[i, j] = d_i v_j
    assert np.max(np.abs(G[1, 0] - np.cos(y))) <= 1e-12
    assert np.max(np.abs(G[0, 1])) <= 1e-12


def test_energy_of_taylor_green():
    g = make_grid(16)
    # <u^2 + v^2>/2 = 2 * (1/8) / 2
    assert abs(energy(_tg(g)) - 0.125) <= 1e-12


def test_vector_identities_on_random_fields():
    g = make_grid(16)
    rng = np.random.default_rng(0)
    v = forward_transform(rng.standard_normal((3,) + g.shape), g)
    f = forward_transform(rng.standard_normal(g.shape), g)
    assert divergence(curl(v)).max_amplitude() <= 1e-12
    assert curl(gradient(f)).max_amplitude() <= 1e-12


def _fd6(values, h, axis):
    def at(s):
        return np.roll(values, -s, axis=axis)

    return (-at(-3) + 9 * at(-2) - 45 * at(-1) + 45 * at(1) - 9 * at(2) + at(3)) / (60 * h)


def test_gradient_matches_sixth_order_differences():
    coarse = make_grid(8)
    fine = make_grid(64)
    rng = np.random.default_rng(1)
    low = forward_transform(rng.standard_normal(coarse.shape), coarse)
    idx = np.mod(coarse.k1d, fine.n)
    c = np.zeros(fine.shape, dtype=np.complex128)
    c[np.ix_(idx, idx, idx)] = low.coeffs
    f = SpectralField(fine, c)

    exact = gradient(f).values()
    vals = f.values()
    for i in range(3):
        fd = _fd6(vals, fine.spacing, i)
        assert np.max(np.abs(fd - exact[i])) <= 1e-4 * np.max(np.abs(exact[i]))


def test_dealiased_product_matches_direct_convolution():
    g = make_grid(8)
    rng = np.random.default_rng(2)
    f = forward_transform(rng.standard_normal(g.shape), g)
    h = forward_transform(rng.standard_normal(g.shape), g)
    direct = np.zeros(g.shape, dtype=np.complex128)
    for p in zip(*np.nonzero(g.dealias_mask)):
        direct += f.coeffs[p] * np.roll(h.coeffs, shift=p, axis=(0, 1, 2))
    got = dealiased_product(f, h).coeffs
    keep = g.dealias_mask
    assert np.max(np.abs(got[keep] - direct[keep])) <= 1e-13
