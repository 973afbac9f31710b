from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

from core.exceptions import StepperError
from fields.grid import GridSpec
from fields.operators import curl, divergence, energy
from fields.spectral import SpectralField

DIV_TOL = 1e-8


@dataclass(frozen=True)
class StepDiagnostics:
    energy: float
    max_vorticity: float
    divergence: float
    radius_estimate: float = math.nan
    resample_error: float = 0.0
    resample_iterations: int = 0
    min_det: float = 1.0
    max_det: float = 1.0
    vorticity_holder: float = math.nan
    t_c: float = math.nan

    def as_dict(self) -> dict[str, Any]:
        return {
            "energy": self.energy,
            "max_vorticity": self.max_vorticity,
            "divergence": self.divergence,
            "radius_estimate": self.radius_estimate,
            "resample_error": self.resample_error,
            "resample_iterations": self.resample_iterations,
            "min_det": self.min_det,
            "max_det": self.max_det,
            "vorticity_holder": self.vorticity_holder,
            "t_c": self.t_c,
        }


def measure(velocity: SpectralField, **extra: Any) -> StepDiagnostics:
    return StepDiagnostics(
        energy=energy(velocity),
        max_vorticity=curl(velocity).sup_norm(),
        divergence=divergence(velocity).max_amplitude(),
        **extra,
    )


@dataclass(frozen=True)
class FlowState:
    """Eulerian velocity at one time; each step produces a new state."""

    time: float
    grid: GridSpec
    velocity: SpectralField
    step_count: int = 0
    diagnostics: StepDiagnostics | None = field(default=None)

    def __post_init__(self) -> None:
        if self.velocity.rank != "vector":
            raise StepperError("state: velocity must be a vector field")
        if self.velocity.grid != self.grid:
            raise StepperError(f"state: velocity grid {self.velocity.grid} differs from {self.grid}")
        if self.diagnostics is None:
            object.__setattr__(self, "diagnostics", measure(self.velocity))
        diag = self.diagnostics
        if diag.divergence > DIV_TOL:
            raise StepperError(f"state: velocity divergence {diag.divergence:.3e} exceeds {DIV_TOL:g}")
        if not math.isfinite(diag.energy):
            raise StepperError("state: non-finite energy")

    @property
    def energy(self) -> float:
        return self.diagnostics.energy

    def advanced(self, h: float, velocity: SpectralField, diagnostics: StepDiagnostics) -> "FlowState":
        return replace(
            self,
            time=self.time + float(h),
            velocity=velocity,
            step_count=self.step_count + 1,
            diagnostics=diagnostics,
        )


def initial_state(velocity: SpectralField, time: float = 0.0) -> FlowState:
    return FlowState(time=float(time), grid=velocity.grid, velocity=velocity)
