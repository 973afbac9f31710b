import numpy as np
import pytest

from experiments.presets import taylor_green
from fields.grid import make_grid
from stepper.state import initial_state
from stepper.stepper import adaptive_step, advance, restart_series, step, suggest_step

pytestmark = pytest.mark.slow


def test_two_half_steps_match_one_full_step():
    state = initial_state(taylor_green(make_grid(32)))
    series, radius = restart_series(state, 12)
    h = 0.5 * suggest_step(radius, 0.5, 0.1)
    full = step(state, 2 * h, 12, 0.5, series=series)
    half = step(step(state, h, 12, 0.5, series=series), h, 12, 0.5)
    assert np.max(np.abs(full.velocity.values() - half.velocity.values())) <= 1e-5


def test_energy_drift_over_ten_steps():
    state = initial_state(taylor_green(make_grid(32)))
    history = advance(state, steps=10, order=12, safety=0.25)
    assert history[-1].time <= 0.5 + 1e-12
    e0 = history[0].energy
    assert abs(history[-1].energy - e0) / e0 <= 1e-5
    assert max(s.diagnostics.divergence for s in history) <= 1e-8


def test_step_doubling_error_decays_with_the_order():
    order = 4
    state = initial_state(taylor_green(make_grid(16)))
    errs = []
    for h in (0.2, 0.1, 0.05):
        full = step(state, 2 * h, order, 1.0)
        half = step(step(state, h, order, 1.0), h, order, 1.0)
        errs.append(float(np.max(np.abs(full.velocity.values() - half.velocity.values()))))
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= 1.5 * coarse / 2**order


def test_adaptive_step_is_stable_in_order():
    state = initial_state(taylor_green(make_grid(32)))
    h12 = adaptive_step(state, 12, 0.5, h_max=10.0)
    h20 = adaptive_step(state, 20, 0.5, h_max=10.0)
    assert abs(h12 - h20) <= 0.1 * h20
