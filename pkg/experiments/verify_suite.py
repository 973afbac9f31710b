from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from bounds.polynomial import discriminant, p_roots, q_critical
from core.config import RunConfig
from core.logging import get_logger
from experiments.presets import load_initial_field
from fields.operators import divergence
from taylor.evaluate import cauchy_invariant_residual, jacobian_residual, solve_residuals
from taylor.radius import MIN_ORDER, estimate_radius
from taylor.series import build_series

logger = get_logger(__name__)

REVERSAL_TOL = 1e-12
MONOTONE_SLACK = 1e-12
CHECK_TIME = 0.2


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""


@dataclass(frozen=True)
class VerifySuiteResult:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"check": c.name, "passed": c.passed, "value": c.value, "threshold": c.threshold, "detail": c.detail}
                for c in self.checks
            ],
            columns=["check", "passed", "value", "threshold", "detail"],
        )


def _at_most(name: str, value: float, threshold: float, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(value <= threshold), value=float(value), threshold=float(threshold), detail=detail)


def _polynomial_checks() -> list[CheckResult]:
    out = [
        _at_most("q_critical_closed_form", abs(q_critical(1.0) - (3.0 * math.sqrt(2.0) - 38.0 / 9.0)), 1e-12),
        _at_most("q_critical_asymptotic", abs(48.0 * 1e8 * q_critical(1e4) - 1.0), 1e-3, "theta=1e4"),
    ]
    worst = max(abs(discriminant(th, q_critical(th))) / (972.0 * th**6) for th in (0.5, 1.0, 10.0, 1e3))
    out.append(_at_most("discriminant_at_q_critical", worst, 1e-8, "theta in {0.5, 1, 10, 1e3}"))

    qs = np.linspace(0.0, q_critical(1.0), 100, endpoint=False)
    z = np.array([p_roots(1.0, float(q)).roots for q in qs])
    rise = float(np.max(np.maximum(-np.diff(z[:, 1]), 0.0)))
    fall = float(np.max(np.maximum(np.diff(z[:, 2]), 0.0)))
    out.append(_at_most("root_monotonicity", max(rise, fall), 1e-12, "zeta2 up, zeta3 down over [0, Q_c)"))
    return out


def run_verify_suite(cfg: RunConfig) -> VerifySuiteResult:
    checks = _polynomial_checks()

    v0 = load_initial_field(cfg)
    checks.append(_at_most("initial_divergence", divergence(v0).max_amplitude(), 1e-12, cfg.preset))

    order = max(cfg.order, MIN_ORDER)
    series = build_series(v0, order, solve_tol=cfg.solve_tol)
    res = solve_residuals(series)
    checks.append(_at_most("curl_solve_residual", max(r[1] for r in res), cfg.solve_tol))
    checks.append(_at_most("div_solve_residual", max(r[2] for r in res), cfg.solve_tol))

    first = float(np.max(np.abs(series.xi(1).coeffs - v0.coeffs)))
    checks.append(_at_most("first_coefficient_is_v0", first, 0.0))

    if cfg.preset in ("constant", "shear") and cfg.field_file is None:
        tail = max(series.xi(s).max_amplitude() for s in range(2, series.order + 1))
        checks.append(_at_most("depletion", tail, cfg.depletion_tol, f"max |xi^(s)|, s >= 2, {cfg.preset}"))

    reversed_series = build_series(-v0, order, solve_tol=cfg.solve_tol)
    scale = max(1.0, max(c.max_amplitude() for c in series.coeffs))
    rev = max(
        float(np.max(np.abs(reversed_series.xi(s).coeffs - (-1.0) ** s * series.xi(s).coeffs)))
        for s in range(1, order + 1)
    )
    checks.append(_at_most("time_reversal", rev / scale, REVERSAL_TOL))

    radius = estimate_radius(series)
    t = CHECK_TIME if not math.isfinite(radius) else min(CHECK_TIME, 0.5 * radius)
    orders = sorted({max(MIN_ORDER, order // 2), max(MIN_ORDER, (3 * order) // 4), order})
    det_res = [jacobian_residual(series.truncated(s), t) for s in orders]
    inv_res = [cauchy_invariant_residual(series.truncated(s), t) for s in orders]
    det_up = max([b - a for a, b in zip(det_res, det_res[1:])] + [0.0])
    inv_up = max([b - a for a, b in zip(inv_res, inv_res[1:])] + [0.0])
    checks.append(_at_most("jacobian_decreasing", det_up, MONOTONE_SLACK, f"t={t:.4g} orders={orders} res={det_res}"))
    checks.append(_at_most("cauchy_invariants_decreasing", inv_up, MONOTONE_SLACK, f"t={t:.4g} orders={orders} res={inv_res}"))

    result = VerifySuiteResult(checks=checks)
    for c in checks:
        logger.info("verify: %s %s value=%.3e threshold=%.3e", c.name, "ok" if c.passed else "FAIL", c.value, c.threshold)
    return result
