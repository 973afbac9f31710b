"""
The cubic p(zeta) = 6 theta^3 zeta^3 + 12 theta^2 zeta^2 - zeta + Q bounding 2A + B.

For 0 <= Q <= Q_c(theta) it has three real roots zeta1 <= 0 <= zeta2 <= zeta3,
and zeta2 (the intermediate root) bounds the generating functions. At Q_c the
discriminant vanishes and zeta2 = zeta3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from core.exceptions import BoundError

# |d| below this fraction of the depressed-cubic scale counts as a double root
DOUBLE_ROOT_RTOL = 1e-12
_POLISH_ITERS = 3


@dataclass(frozen=True)
class CubicRoots:
    roots: tuple[float, ...]
    three_real: bool
    delta: float

    @property
    def zeta2(self) -> float:
        if not self.three_real:
            raise BoundError(f"polynomial: no intermediate root, discriminant {self.delta:.6e} < 0")
        return self.roots[1]


def _check_theta(theta: float) -> float:
    th = float(theta)
    if not (th > 0.0 and math.isfinite(th)):
        raise BoundError(f"polynomial: theta must be a positive finite number: {theta}")
    return th


def _check_q(Q: float) -> float:
    q = float(Q)
    if not (q >= 0.0 and math.isfinite(q)):
        raise BoundError(f"polynomial: Q must be >= 0: {Q}")
    return q


def p_eval(zeta: float | np.ndarray, theta: float, Q: float) -> float | np.ndarray:
    th = _check_theta(theta)
    z = zeta
    return ((6.0 * th**3 * z + 12.0 * th**2) * z - 1.0) * z + float(Q)


def p_derivative(zeta: float | np.ndarray, theta: float) -> float | np.ndarray:
    th = _check_theta(theta)
    return (18.0 * th**3 * zeta + 24.0 * th**2) * zeta - 1.0


def discriminant(theta: float, Q: float) -> float:
    """972 theta^6 (-Q^2 - Q (64/9 + 4/(3 theta)) + 4/(27 theta^2) + 2/(81 theta^3))."""
    th = _check_theta(theta)
    q = float(Q)
    inner = -q * q - q * (64.0 / 9.0 + 4.0 / (3.0 * th)) + 4.0 / (27.0 * th**2) + 2.0 / (81.0 * th**3)
    return 972.0 * th**6 * inner


def q_critical(theta: float) -> float:
    """Positive root of the discriminant in Q.

    sqrt(b^2 + c) - b is evaluated as c / (sqrt(b^2 + c) + b), which stays
    accurate when c << b^2 (large theta).
    """
    th = _check_theta(theta)
    b = 2.0 / (3.0 * th) + 32.0 / 9.0
    c = 4.0 / (27.0 * th**2) + 2.0 / (81.0 * th**3)
    return c / (math.sqrt(b * b + c) + b)


def _depressed(th: float, q: float) -> tuple[float, float, float]:
    """Shift B/3 and depressed coefficients (p, q) of the monic cubic."""
    B = 2.0 / th
    C = -1.0 / (6.0 * th**3)
    D = q / (6.0 * th**3)
    pp = C - B * B / 3.0
    qq = D - B * C / 3.0 + 2.0 * B**3 / 27.0
    return B / 3.0, pp, qq


def _polish(root: float, th: float, q: float, scale: float) -> float:
    r = root
    for _ in range(_POLISH_ITERS):
        f = p_eval(r, th, q)
        df = p_derivative(r, th)
        if f == 0.0 or abs(df) <= 1e-8 * (6.0 * th**3 * scale * scale + 1.0):
            break
        step = f / df
        if abs(step) > 1e-6 * max(abs(r), scale):
            break
        cand = r - step
        if abs(p_eval(cand, th, q)) >= abs(f):
            break
        r = cand
    return r


def p_roots(theta: float, Q: float) -> CubicRoots:
    """Real roots of p, ascending.

    Three real roots use the trigonometric form, a single real root uses
    Cardano. Simple roots are polished by Newton; a (near) double root is not.
    """
    th = _check_theta(theta)
    q = _check_q(Q)
    shift, pp, qq = _depressed(th, q)
    delta = discriminant(th, q)

    if q == 0.0:
        # p = zeta (6 theta^3 zeta^2 + 12 theta^2 zeta - 1)
        disc = math.sqrt(144.0 * th**4 + 24.0 * th**3)
        lo = (-12.0 * th**2 - disc) / (12.0 * th**3)
        hi = (-12.0 * th**2 + disc) / (12.0 * th**3)
        return CubicRoots(roots=(lo, 0.0, hi), three_real=True, delta=delta)

    d = qq * qq / 4.0 + pp**3 / 27.0
    scale_d = max(qq * qq / 4.0, abs(pp) ** 3 / 27.0)
    m = math.sqrt(-pp / 3.0)

    if d <= DOUBLE_ROOT_RTOL * scale_d:
        if abs(d) <= DOUBLE_ROOT_RTOL * scale_d:
            arg = -1.0 if qq > 0 else 1.0
            double = True
        else:
            arg = (3.0 * qq / (2.0 * pp)) * math.sqrt(-3.0 / pp)
            arg = min(1.0, max(-1.0, arg))
            double = False
        phi = math.acos(arg) / 3.0
        ys = [2.0 * m * math.cos(phi - 2.0 * math.pi * k / 3.0) for k in range(3)]
        roots = sorted(y - shift for y in ys)
        if not double:
            roots = sorted(_polish(r, th, q, m) for r in roots)
        return CubicRoots(roots=tuple(roots), three_real=True, delta=delta)

    sq = math.sqrt(d)
    y = math.copysign(abs(-qq / 2.0 + sq) ** (1.0 / 3.0), -qq / 2.0 + sq) + math.copysign(
        abs(-qq / 2.0 - sq) ** (1.0 / 3.0), -qq / 2.0 - sq
    )
    root = _polish(y - shift, th, q, m)
    return CubicRoots(roots=(root,), three_real=False, delta=delta)


def zeta2(theta: float, Q: float) -> float:
    return p_roots(theta, Q).zeta2


def root_sensitivity(theta: float, Q: float) -> tuple[float, ...]:
    """d zeta_i / dQ = -1 / p'(zeta_i) for each real root; inf at a double root."""
    th = _check_theta(theta)
    out = []
    for r in p_roots(th, Q).roots:
        dp = float(p_derivative(r, th))
        out.append(math.inf if dp == 0.0 else -1.0 / dp)
    return tuple(out)


def zeta2_curve(theta: float, samples: int = 100) -> pd.DataFrame:
    """Q, zeta1..3 and the discriminant over Q in [0, Q_c]."""
    th = _check_theta(theta)
    if samples < 2:
        raise BoundError(f"polynomial: need at least 2 curve samples: {samples}")
    qc = q_critical(th)
    rows = []
    for q in np.linspace(0.0, qc, int(samples)):
        r = p_roots(th, float(q))
        z1, z2, z3 = r.roots if r.three_real else (r.roots[0], math.nan, math.nan)
        rows.append({"Q": float(q), "zeta1": z1, "zeta2": z2, "zeta3": z3, "delta": r.delta})
    return pd.DataFrame(rows, columns=["Q", "zeta1", "zeta2", "zeta3", "delta"])
