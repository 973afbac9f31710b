from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
import pandas as pd

from bounds.holder import holder_norm
from bounds.polynomial import p_roots, q_critical
from core.exceptions import BoundError
from core.logging import get_logger
from taylor.series import TaylorSeries

logger = get_logger(__name__)

HOLDER_CONVENTION = "sup + seminorm"


@dataclass(frozen=True)
class BoundConfig:
    """Hoelder exponent and the inequality constants.

    theta_tilde is carried for reports only. theta_heuristic marks a theta
    that was not given and defaulted to 1/gamma.
    """

    gamma: float
    theta: float
    theta_tilde: float = 1.0
    theta_heuristic: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < float(self.gamma) < 1.0:
            raise BoundError(f"bounds: gamma must be in (0, 1): {self.gamma}")
        if not (float(self.theta) > 0.0 and math.isfinite(float(self.theta))):
            raise BoundError(f"bounds: theta must be > 0: {self.theta}")
        if not float(self.theta_tilde) > 0.0:
            raise BoundError(f"bounds: theta_tilde must be > 0: {self.theta_tilde}")

    @classmethod
    def resolve(cls, gamma: float, theta: float | None = None, theta_tilde: float = 1.0) -> "BoundConfig":
        if not 0.0 < float(gamma) < 1.0:
            raise BoundError(f"bounds: gamma must be in (0, 1): {gamma}")
        if theta is None:
            return cls(
                gamma=float(gamma),
                theta=1.0 / float(gamma),
                theta_tilde=theta_tilde,
                theta_heuristic=True,
            )
        return cls(gamma=float(gamma), theta=float(theta), theta_tilde=theta_tilde)


@dataclass(frozen=True)
class BoundReport:
    gamma: float
    theta: float
    theta_heuristic: bool
    omega_norm: float
    q_c: float
    t_c: float
    t: float | None = None
    Q: float | None = None
    delta: float | None = None
    roots: tuple[float, ...] = ()

    def as_row(self) -> dict[str, Any]:
        return {
            "gamma": self.gamma,
            "theta": self.theta,
            "theta_heuristic": self.theta_heuristic,
            "omega_norm": self.omega_norm,
            "Q_c": self.q_c,
            "t_c": self.t_c,
        }


def t_analyticity(omega_norm: float, config: BoundConfig) -> float:
    """Guaranteed analyticity time Q_c(theta) / (2 |omega0|); inf for zero vorticity."""
    w = float(omega_norm)
    if not (w >= 0.0 and math.isfinite(w)):
        raise BoundError(f"bounds: omega_norm must be >= 0: {omega_norm}")
    if w == 0.0:
        return math.inf
    return q_critical(config.theta) / (2.0 * w)


def bound_report(omega_norm: float, config: BoundConfig, t: float | None = None) -> BoundReport:
    qc = q_critical(config.theta)
    tc = t_analyticity(omega_norm, config)
    extra: dict[str, Any] = {}
    if t is not None:
        Q = 2.0 * float(omega_norm) * float(t)
        r = p_roots(config.theta, Q)
        extra = {"t": float(t), "Q": Q, "delta": r.delta, "roots": r.roots}
    return BoundReport(
        gamma=config.gamma,
        theta=config.theta,
        theta_heuristic=config.theta_heuristic,
        omega_norm=float(omega_norm),
        q_c=qc,
        t_c=tc,
        **extra,
    )


@dataclass(frozen=True)
class GeneratingBoundReport:
    """2A + B <= zeta2(Q) check at one time, with the two intermediate inequalities.

    Margins are (right side - left side); a negative margin means the
    inequality fails for the measured norms and the configured theta.
    """

    t: float
    gamma: float
    theta: float
    theta_heuristic: bool
    omega_norm: float
    Q: float
    q_c: float
    t_c: float
    A: float
    B: float
    zeta2: float
    margin: float
    worst_partial_margin: float
    chain_a_margin: float
    chain_b_margin: float
    holds: bool
    beyond_t_c: bool

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def generating_coefficients(series: TaylorSeries, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Hoelder norms |lap a^(s)|, |lap b^(s)| for s = 1..S (stored ones reused when gamma matches)."""
    alpha = []
    beta = []
    stored = series.holder_gamma is not None and float(series.holder_gamma) == float(gamma)
    for s, nm in enumerate(series.norms, start=1):
        if stored and nm.lap_a_holder is not None and nm.lap_b_holder is not None:
            alpha.append(nm.lap_a_holder)
            beta.append(nm.lap_b_holder)
        else:
            alpha.append(holder_norm(series.lap_a[s - 1], gamma, radius_fraction=series.holder_radius))
            beta.append(holder_norm(series.lap_b[s - 1], gamma, radius_fraction=series.holder_radius))
    return np.asarray(alpha, dtype=np.float64), np.asarray(beta, dtype=np.float64)


def _partial_sums(coeffs: np.ndarray, t: float) -> np.ndarray:
    """Partial sums sum_{s<=S'} c_s t^s for S' = 1..S."""
    powers = float(t) ** np.arange(1, coeffs.size + 1)
    return np.cumsum(coeffs * powers)


def _evaluate_bound(
    alpha: np.ndarray,
    beta: np.ndarray,
    config: BoundConfig,
    t: float,
    omega_norm: float,
) -> GeneratingBoundReport:
    if t < 0.0:
        raise BoundError(f"bounds: t must be >= 0: {t}")
    qc = q_critical(config.theta)
    tc = t_analyticity(omega_norm, config)
    Q = 2.0 * omega_norm * t
    a_sums = _partial_sums(alpha, t)
    b_sums = _partial_sums(beta, t)
    A = float(a_sums[-1])
    B = float(b_sums[-1])
    zeta = 2.0 * A + B
    th = config.theta

    beyond = t > tc
    z2 = math.nan
    if not beyond:
        r = p_roots(th, Q)
        if r.three_real:
            z2 = r.zeta2
        else:
            beyond = True

    if beyond:
        logger.warning("bounds: t=%.4g is beyond t_c=%.4g; no bound", t, tc)
        margin = worst = math.nan
        holds = False
    else:
        margin = z2 - zeta
        worst = float(np.min(z2 - (2.0 * a_sums + b_sums)))
        holds = worst >= 0.0

    return GeneratingBoundReport(
        t=float(t),
        gamma=config.gamma,
        theta=th,
        theta_heuristic=config.theta_heuristic,
        omega_norm=float(omega_norm),
        Q=Q,
        q_c=qc,
        t_c=tc,
        A=A,
        B=B,
        zeta2=z2,
        margin=margin,
        worst_partial_margin=worst,
        chain_a_margin=omega_norm * t + 3.0 * th**2 * zeta**2 - A,
        chain_b_margin=6.0 * th**2 * zeta**2 + 6.0 * th**3 * zeta**3 - B,
        holds=holds,
        beyond_t_c=beyond,
    )


def _omega_norm(series: TaylorSeries, config: BoundConfig, omega_norm: float | None) -> float:
    if omega_norm is not None:
        return float(omega_norm)
    return holder_norm(series.omega0, config.gamma, radius_fraction=series.holder_radius)


def verify_generating_bound(
    series: TaylorSeries,
    config: BoundConfig,
    t: float,
    *,
    omega_norm: float | None = None,
) -> GeneratingBoundReport:
    """Diagnostic comparison of the measured generating functions with zeta2(Q(t))."""
    w = _omega_norm(series, config, omega_norm)
    alpha, beta = generating_coefficients(series, config.gamma)
    return _evaluate_bound(alpha, beta, config, float(t), w)


def generating_bound_curve(
    series: TaylorSeries,
    config: BoundConfig,
    *,
    samples: int = 50,
    omega_norm: float | None = None,
    t_max: float | None = None,
) -> pd.DataFrame:
    """Bound margins over t in [0, min(t_c, t_max)]."""
    w = _omega_norm(series, config, omega_norm)
    alpha, beta = generating_coefficients(series, config.gamma)
    tc = t_analyticity(w, config)
    end = tc if t_max is None else min(tc, float(t_max))
    if not math.isfinite(end):
        end = 1.0
    times = np.linspace(0.0, end, int(samples))
    rows = [_evaluate_bound(alpha, beta, config, float(t), w).as_dict() for t in times]
    return pd.DataFrame(rows)
