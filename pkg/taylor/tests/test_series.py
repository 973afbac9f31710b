import numpy as np
import pytest

from core.exceptions import SeriesError
from experiments.presets import abc, constant, shear, taylor_green
from fields.grid import make_grid
from fields.operators import band_limit, gradient
from fields.spectral import forward_transform
from hodge.decomposition import assemble_from_potentials
from taylor.recursion import cofactor_sum, curl_rhs, div_rhs, div_rhs_parts
from taylor.series import build_series, init_first_coefficient, next_coefficient


def test_first_coefficient_is_initial_velocity():
    v0 = shear(make_grid(16))
    series = init_first_coefficient(v0)
    assert series.order == 1
    assert np.array_equal(series.xi(1).coeffs, v0.coeffs)
    _, y, _ = series.grid.points
    assert np.max(np.abs(series.omega0.values()[2] + np.cos(y))) <= 1e-12


def test_non_solenoidal_initial_velocity_rejected():
    g = make_grid(8)
    x, _, _ = g.points
    with pytest.raises(SeriesError, match="not solenoidal"):
        init_first_coefficient(gradient(forward_transform(np.sin(x), g)))


def test_scalar_initial_velocity_rejected():
    g = make_grid(8)
    with pytest.raises(SeriesError):
        init_first_coefficient(forward_transform(np.zeros(g.shape), g))


def test_shear_depletion():
    series = build_series(shear(make_grid(16)), 10)
    for s in range(2, 11):
        assert series.xi(s).max_amplitude() <= 1e-12


def test_constant_flow_has_only_first_order():
    v0 = constant(make_grid(8))
    series = build_series(v0, 5)
    assert np.array_equal(series.xi(1).coeffs, v0.coeffs)
    for s in range(2, 6):
        assert series.xi(s).max_amplitude() == 0.0


def test_taylor_green_second_coefficient_closed_form():
    g = make_grid(16)
    x, y, z = g.points
    series = build_series(taylor_green(g), 2)
    expected = np.stack(
        [
            np.sin(2 * x) * (np.cos(2 * z) + 2.0),
            np.sin(2 * y) * (np.cos(2 * z) + 2.0),
            np.sin(2 * z) * (np.cos(2 * x) + np.cos(2 * y)),
        ]
    ) / 16.0
    got = series.xi(2).values()
    assert np.max(np.abs(got - expected)) <= 1e-10 * np.max(np.abs(expected))


def test_taylor_green_second_order_right_sides():
    g = make_grid(16)
    x, y, z = g.points
    series = build_series(taylor_green(g), 1)
    # grad v_k x grad v_k vanishes, so the s = 2 curl source is zero
    assert curl_rhs(2, series).max_amplitude() <= 1e-15
    expected = 0.25 * (np.cos(2 * x) + np.cos(2 * y)) * (1.0 + np.cos(2 * z))
    assert np.max(np.abs(div_rhs(2, series).values() - expected)) <= 1e-12


def test_cubic_term_is_determinant_at_third_order():
    g = make_grid(16)
    series = build_series(abc(g), 2)
    _, cubic = div_rhs_parts(3, series)
    G = series.grad(1)
    det = np.linalg.det(np.moveaxis(G, (0, 1), (-2, -1)))
    expected = band_limit(-det, g, zero_mean=True)
    assert np.max(np.abs(cubic.coeffs - expected.coeffs)) <= 1e-12


def test_cofactor_cache_matches_recomputation():
    series = build_series(abc(make_grid(16)), 4)
    assert len(series.cofactor_sums) == 3
    fresh = series.truncated(2)
    assert np.max(np.abs(cofactor_sum(fresh, 3) - series.cofactor_sums[1])) <= 1e-12


def test_recursion_needs_history():
    series = build_series(abc(make_grid(8)), 2)
    with pytest.raises(SeriesError):
        curl_rhs(5, series)
    with pytest.raises(SeriesError):
        series.xi(3)


def test_time_reversal_symmetry():
    g = make_grid(16)
    v0 = taylor_green(g)
    fwd = build_series(v0, 6)
    bwd = build_series(-v0, 6)
    for s in range(1, 7):
        a = fwd.xi(s).coeffs
        b = bwd.xi(s).coeffs
        scale = max(1e-300, float(np.max(np.abs(a))))
        assert np.max(np.abs(b - (-1) ** s * a)) <= 1e-12 * scale


def test_next_coefficient_extends_by_one():
    series = build_series(taylor_green(make_grid(8)), 3)
    nxt = next_coefficient(series)
    assert nxt.order == 4
    assert series.order == 3
    assert [nm.s for nm in nxt.norms] == [1, 2, 3, 4]


def test_potentials_reassemble_coefficient():
    series = build_series(abc(make_grid(16)), 3)
    p = series.potentials(3)
    back = assemble_from_potentials(p)
    assert np.max(np.abs(back.coeffs - series.xi(3).coeffs)) <= 1e-12


def test_holder_norms_are_stored_when_requested():
    series = build_series(taylor_green(make_grid(16)), 3, holder_gamma=0.5)
    for nm in series.norms:
        assert nm.lap_a_holder is not None and nm.lap_a_holder >= nm.lap_a_sup
    plain = build_series(taylor_green(make_grid(16)), 3)
    assert plain.norms[0].lap_a_holder is None


def test_build_series_rejects_order_zero():
    with pytest.raises(SeriesError):
        build_series(shear(make_grid(8)), 0)
