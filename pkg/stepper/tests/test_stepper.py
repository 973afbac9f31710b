import math

import numpy as np
import pytest

from bounds.analyticity import BoundConfig
from core.exceptions import StepperError
from experiments.presets import constant, shear, taylor_green
from fields.grid import make_grid
from fields.operators import gradient
from fields.spectral import forward_transform
from stepper.checkpoint import checkpoint_paths, load_checkpoint, save_checkpoint
from stepper.state import FlowState, initial_state
from stepper.stepper import adaptive_step, advance, restart_series, step, suggest_step


def test_suggest_step():
    assert suggest_step(math.inf, 0.5, 0.25) == 0.25
    assert suggest_step(0.4, 0.5, 0.25) == pytest.approx(0.2)
    assert suggest_step(10.0, 0.5, 0.25) == 0.25
    with pytest.raises(StepperError):
        suggest_step(1.0, 0.0, 0.25)


def test_state_rejects_divergent_velocity():
    g = make_grid(8)
    x, _, _ = g.points
    with pytest.raises(StepperError):
        initial_state(gradient(forward_transform(np.sin(x), g)))


def test_shear_step_is_steady():
    v0 = shear(make_grid(16))
    out = step(initial_state(v0), 0.5, 6)
    assert out.time == 0.5
    assert out.step_count == 1
    assert np.max(np.abs(out.velocity.coeffs - v0.coeffs)) <= 1e-10
    assert out.diagnostics.radius_estimate == math.inf


def test_constant_flow_step_is_steady():
    v0 = constant(make_grid(8))
    out = step(initial_state(v0), 0.25, 4)
    assert np.max(np.abs(out.velocity.coeffs - v0.coeffs)) <= 1e-12


def test_step_beyond_safety_rejected():
    state = initial_state(taylor_green(make_grid(16)))
    _, radius = restart_series(state, 6)
    with pytest.raises(StepperError, match="exceeds safety"):
        step(state, 2.0 * radius, 6, safety=0.5)


def test_restart_requires_minimum_order():
    with pytest.raises(StepperError):
        restart_series(initial_state(shear(make_grid(8))), 3)


def test_adaptive_step_for_steady_flow_is_h_max():
    assert adaptive_step(initial_state(shear(make_grid(8))), 4, h_max=0.3) == 0.3


def test_advance_keeps_fields_solenoidal_and_records_bounds():
    state = initial_state(taylor_green(make_grid(16)))
    seen = []
    history = advance(
        state,
        steps=2,
        order=6,
        safety=0.25,
        h_max=0.05,
        bound_config=BoundConfig.resolve(0.5),
        on_step=seen.append,
    )
    assert len(history) == 3
    assert seen == history[1:]
    for s in history[1:]:
        assert s.diagnostics.divergence <= 1e-8
        assert math.isfinite(s.diagnostics.vorticity_holder)
        assert s.diagnostics.t_c > 0.0
    assert 0.0 < history[-1].time <= 0.1 + 1e-12
    drift = abs(history[-1].energy - history[0].energy) / history[0].energy
    assert drift <= 1e-4


def test_checkpoint_round_trip(tmp_path):
    state = step(initial_state(taylor_green(make_grid(8))), 0.01, 4)
    bin_path, txt_path = save_checkpoint(state, tmp_path)
    assert (bin_path, txt_path) == checkpoint_paths(tmp_path, 1)
    back = load_checkpoint(bin_path)
    assert isinstance(back, FlowState)
    assert back.time == state.time
    assert back.step_count == 1
    assert np.array_equal(back.velocity.coeffs, state.velocity.coeffs)
    for k, v in state.diagnostics.as_dict().items():
        got = back.diagnostics.as_dict()[k]
        assert got == v or (math.isnan(got) and math.isnan(v))


def test_checkpoint_without_sidecar_rejected(tmp_path):
    bin_path, txt_path = save_checkpoint(initial_state(shear(make_grid(8))), tmp_path)
    txt_path.unlink()
    with pytest.raises(StepperError):
        load_checkpoint(bin_path)
