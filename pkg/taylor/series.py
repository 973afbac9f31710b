from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from bounds.holder import DEFAULT_RADIUS_FRACTION, holder_norm
from core.exceptions import SeriesError
from core.logging import get_logger
from fields.grid import GridSpec
from fields.operators import curl, divergence, gradient_tensor_values
from fields.spectral import SpectralField, truncate_values
from hodge.decomposition import Potentials, assemble_from_potentials, hodge_decompose
from hodge.poisson import inverse_laplacian
from taylor.recursion import cofactor_pair_sum, curl_rhs, div_rhs

logger = get_logger(__name__)

DIV_TOL = 1e-10
SOLVE_TOL = 1e-10
TRANSLATION_TOL = 1e-14


@dataclass(frozen=True)
class OrderNorms:
    s: int
    xi_sup: float
    lap_a_sup: float
    lap_b_sup: float
    lap_a_holder: float | None = None
    lap_b_holder: float | None = None


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Time-Taylor coefficients xi^(1..S) of the Lagrangian displacement.

    `grad_coeffs[s-1]` holds physical samples of G[i, j] = d_i xi^(s)_j.
    `lap_a[s-1]`, `lap_b[s-1]` are lap a^(s) and lap b^(s).
    `cofactor_sums[r-2]` caches the truncated pair sum
    sum_{m+n=r} grad xi^(m)_2 x grad xi^(n)_3 used by the cubic term.
    """

    grid: GridSpec
    v0: SpectralField
    omega0: SpectralField
    coeffs: tuple[SpectralField, ...]
    grad_coeffs: tuple[np.ndarray, ...]
    lap_a: tuple[SpectralField, ...]
    lap_b: tuple[SpectralField, ...]
    norms: tuple[OrderNorms, ...]
    cofactor_sums: tuple[np.ndarray, ...] = ()
    holder_gamma: float | None = None
    holder_radius: float = DEFAULT_RADIUS_FRACTION
    solve_tol: float = field(default=SOLVE_TOL)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def xi(self, s: int) -> SpectralField:
        if not 1 <= s <= self.order:
            raise SeriesError(f"taylor: order {s} not in 1..{self.order}")
        return self.coeffs[s - 1]

    def grad(self, s: int) -> np.ndarray:
        if not 1 <= s <= self.order:
            raise SeriesError(f"taylor: order {s} not in 1..{self.order}")
        return self.grad_coeffs[s - 1]

    def potentials(self, s: int) -> Potentials:
        # the mean of xi^(1) is a uniform translation, outside the potentials
        return hodge_decompose(self.xi(s).without_mean())

    @property
    def is_translation(self) -> bool:
        """v0 is uniform, so every right side vanishes and xi(t) = v0 t."""
        scale = max(1.0, float(np.max(np.abs(self.v0.mean))))
        return float(np.max(np.abs(self.grad_coeffs[0]))) <= TRANSLATION_TOL * scale

    def sup_norms(self) -> np.ndarray:
        return np.array([nm.xi_sup for nm in self.norms], dtype=np.float64)

    def truncated(self, order: int) -> "TaylorSeries":
        if not 1 <= order <= self.order:
            raise SeriesError(f"taylor: cannot truncate order {self.order} series to {order}")
        return replace(
            self,
            coeffs=self.coeffs[:order],
            grad_coeffs=self.grad_coeffs[:order],
            lap_a=self.lap_a[:order],
            lap_b=self.lap_b[:order],
            norms=self.norms[:order],
            cofactor_sums=self.cofactor_sums[: max(0, order - 1)],
        )


def _order_norms(
    s: int,
    xi: SpectralField,
    lap_a: SpectralField,
    lap_b: SpectralField,
    holder_gamma: float | None,
    holder_radius: float,
) -> OrderNorms:
    a_h = b_h = None
    if holder_gamma is not None:
        a_h = holder_norm(lap_a, holder_gamma, radius_fraction=holder_radius)
        b_h = holder_norm(lap_b, holder_gamma, radius_fraction=holder_radius)
    return OrderNorms(
        s=s,
        xi_sup=xi.sup_norm(),
        lap_a_sup=lap_a.sup_norm(),
        lap_b_sup=lap_b.sup_norm(),
        lap_a_holder=a_h,
        lap_b_holder=b_h,
    )


def init_first_coefficient(
    v0: SpectralField,
    *,
    div_tol: float = DIV_TOL,
    solve_tol: float = SOLVE_TOL,
    holder_gamma: float | None = None,
    holder_radius: float = DEFAULT_RADIUS_FRACTION,
) -> TaylorSeries:
    if v0.rank != "vector":
        raise SeriesError("taylor: initial velocity must be a vector field")
    div = divergence(v0).max_amplitude()
    if div > div_tol:
        raise SeriesError(f"taylor: initial velocity is not solenoidal (max |div v0| = {div:.3e})")

    omega0 = curl(v0)
    lap_a = -omega0
    lap_b = divergence(v0)
    norms = _order_norms(1, v0, lap_a, lap_b, holder_gamma, holder_radius)
    logger.info("taylor: s=1 |xi|=%.3e |omega0|=%.3e", norms.xi_sup, norms.lap_a_sup)

    return TaylorSeries(
        grid=v0.grid,
        v0=v0,
        omega0=omega0,
        coeffs=(v0,),
        grad_coeffs=(gradient_tensor_values(v0),),
        lap_a=(lap_a,),
        lap_b=(lap_b,),
        norms=(norms,),
        holder_gamma=holder_gamma,
        holder_radius=holder_radius,
        solve_tol=solve_tol,
    )


def next_coefficient(series: TaylorSeries) -> TaylorSeries:
    """Append xi^(s), s = order + 1, by solving the two Poisson problems.

    lap a = -curl_rhs(s)/s, lap b = div_rhs(s), xi^(s) = curl a + grad b.
    """
    if series.order < 1:
        raise SeriesError("taylor: next_coefficient needs xi^(1)")
    s = series.order + 1

    c = curl_rhs(s, series)
    d = div_rhs(s, series)

    div_c = divergence(c).max_amplitude()
    if div_c > series.solve_tol * max(1.0, c.max_amplitude()):
        raise SeriesError(f"taylor: curl right side at s={s} is not solenoidal (max={div_c:.3e})")

    lap_a = (c * (-1.0 / s)).without_mean()
    lap_b = d.without_mean()
    pot = Potentials(a=inverse_laplacian(lap_a), b=inverse_laplacian(lap_b))
    xi = assemble_from_potentials(pot)

    grads = series.grad_coeffs + (gradient_tensor_values(xi),)
    norms = _order_norms(s, xi, lap_a, lap_b, series.holder_gamma, series.holder_radius)
    logger.info(
        "taylor: s=%d |xi|=%.3e |lap a|=%.3e |lap b|=%.3e",
        s,
        norms.xi_sup,
        norms.lap_a_sup,
        norms.lap_b_sup,
    )

    out = replace(
        series,
        coeffs=series.coeffs + (xi,),
        grad_coeffs=grads,
        lap_a=series.lap_a + (lap_a,),
        lap_b=series.lap_b + (lap_b,),
        norms=series.norms + (norms,),
    )
    # C^(s) only needs orders < s, so it is ready for div_rhs(s + 1)
    pair = truncate_values(cofactor_pair_sum(out, s), out.grid)
    return replace(out, cofactor_sums=out.cofactor_sums + (pair,))


def build_series(
    v0: SpectralField,
    order: int,
    *,
    div_tol: float = DIV_TOL,
    solve_tol: float = SOLVE_TOL,
    holder_gamma: float | None = None,
    holder_radius: float = DEFAULT_RADIUS_FRACTION,
) -> TaylorSeries:
    if order < 1:
        raise SeriesError(f"taylor: order must be >= 1: {order}")
    series = init_first_coefficient(
        v0,
        div_tol=div_tol,
        solve_tol=solve_tol,
        holder_gamma=holder_gamma,
        holder_radius=holder_radius,
    )
    while series.order < order:
        series = next_coefficient(series)
    return series
