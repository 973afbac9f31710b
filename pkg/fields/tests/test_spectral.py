import numpy as np
import pytest

from core.exceptions import FieldError
from fields.grid import GridSpec, make_grid
from fields.spectral import SpectralField, forward_transform, inverse_transform, zeros


def test_grid_cutoff_and_nyquist():
    g = make_grid(32)
    assert g.cutoff == 10
    assert not g.dealias_mask[16, 0, 0]
    assert g.dealias_mask[10, 0, 0]
    assert not g.dealias_mask[11, 0, 0]
    assert g.dealias_mask[32 - 10, 0, 0]


def test_grid_rejects_bad_n():
    with pytest.raises(FieldError):
        GridSpec(n=7)
    with pytest.raises(FieldError):
        GridSpec(n=32, dealias_fraction=0.0)


def test_round_trip_band_limited_samples():
    g = make_grid(16)
    x, y, z = g.points
    f = np.sin(x) * np.cos(2 * y) + 0.5 * np.cos(3 * z)
    sf = forward_transform(f, g)
    assert np.max(np.abs(inverse_transform(sf) - f)) <= 1e-12


def test_mean_is_zero_mode():
    g = make_grid(8)
    sf = forward_transform(np.full(g.shape, 3.0), g)
    assert abs(sf.mean - 3.0) <= 1e-14
    assert abs(sf.without_mean().mean) == 0.0


def test_non_hermitian_rejected():
    g = make_grid(8)
    c = np.zeros(g.shape, dtype=np.complex128)
    c[1, 0, 0] = 1.0
    with pytest.raises(FieldError):
        SpectralField(g, c)


def test_complex_samples_rejected():
    g = make_grid(8)
    with pytest.raises(FieldError):
        forward_transform(np.zeros(g.shape, dtype=np.complex128), g)


def test_modes_beyond_cutoff_are_removed():
    g = make_grid(16)
    x, _, _ = g.points
    sf = forward_transform(np.cos(7 * x), g)
    assert np.all(sf.coeffs[~g.dealias_mask] == 0.0)
    assert sf.max_amplitude() <= 1e-14


def test_arithmetic_and_norms():
    g = make_grid(8)
    x, _, _ = g.points
    a = forward_transform(np.sin(x), g)
    b = a * 2.0 - a
    assert np.max(np.abs(b.coeffs - a.coeffs)) <= 1e-15
    assert abs(a.sup_norm() - 1.0) <= 1e-12
    assert abs(a.l2_norm() - np.sqrt(0.5)) <= 1e-12
    assert zeros(g, "vector").is_vector


def test_coefficients_are_read_only():
    g = make_grid(8)
    sf = zeros(g)
    with pytest.raises(ValueError):
        sf.coeffs[0, 0, 0] = 1.0


def test_sine_has_two_imaginary_coefficients():
    g = make_grid(16)
    x, _, _ = g.points
    c = forward_transform(np.sin(x), g).coeffs
    assert c[1, 0, 0] == pytest.approx(-0.5j, abs=1e-15)
    assert c[g.n - 1, 0, 0] == pytest.approx(0.5j, abs=1e-15)
    c = c.copy()
    c[1, 0, 0] = c[g.n - 1, 0, 0] = 0.0
    assert np.max(np.abs(c)) <= 1e-15


def test_parseval_and_round_trip_on_random_fields():
    g = make_grid(16)
    rng = np.random.default_rng(0)
    v = forward_transform(rng.standard_normal((3,) + g.shape), g)
    vals = v.values()
    mean_sq = float(np.mean(np.sum(vals * vals, axis=0)))
    assert mean_sq == pytest.approx(v.l2_norm() ** 2, rel=1e-12)
    again = forward_transform(vals, g)
    assert np.max(np.abs(again.coeffs - v.coeffs)) <= 1e-12
    assert np.max(np.abs(again.values() - vals)) <= 1e-12
