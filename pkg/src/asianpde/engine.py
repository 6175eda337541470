"""Backward time-marching shared by the Crank-Nicolson and compact schemes.

Both schemes produce, for each interior node ``i = 2..M``, a row

    G_i H_{i+1}^n + K_i H_i^n + J_i H_{i-1}^n = D_i H_{i+1}^{n+1} + E_i H_i^{n+1} + F_i H_{i-1}^{n+1}

so a step is ``B H^(n) = A H^(n+1) + b^(n)`` with ``B = tridiag(J, K, G)`` and
``A = tridiag(F, E, D)`` on the interior, and ``b^(n)`` carrying the boundary
values. Node ``R = 0`` follows the one-sided transport update and node
``R = R_max`` is pinned to zero.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteSolutionError, ValidationError
from .grid import Grid
from .market import MarketParams, final_condition, recover_price
from .tridiag import DEFAULT_PIVOT_FLOOR, ThomasFactorization, TridiagonalOperator, _apply


@dataclass(frozen=True)
class SchemeCoefficients:
    """Per-row weights for interior nodes ``i = 2..M`` (arrays of length ``M - 1``).

    ``G, K, J`` multiply the unknown level ``n``; ``D, E, F`` the known level ``n+1``.
    """

    G: np.ndarray
    K: np.ndarray
    J: np.ndarray
    D: np.ndarray
    E: np.ndarray
    F: np.ndarray
    scheme: str = "custom"

    def __post_init__(self) -> None:
        size = None
        for name in "GKJDEF":
            arr = np.array(getattr(self, name), dtype=float, ndmin=1)
            if arr.ndim != 1:
                raise ValidationError(f"{name} must be 1-D")
            if size is None:
                size = arr.shape[0]
            elif arr.shape[0] != size:
                raise ValidationError(f"row arrays differ in length ({name}: {arr.shape[0]} != {size})")
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} has non-finite entries")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_rows(self) -> int:
        return self.K.shape[0]

    def lhs_operator(self) -> TridiagonalOperator:
        """Matrix ``B`` acting on the unknown interior level."""
        return TridiagonalOperator(lower=self.J[1:], diag=self.K, upper=self.G[:-1])

    def rhs_operator(self) -> TridiagonalOperator:
        """Matrix ``A`` acting on the known interior level."""
        return TridiagonalOperator(lower=self.F[1:], diag=self.E, upper=self.D[:-1])


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one backward solve.

    ``H0`` is the surface ``H(R_i, 0)`` on all grid nodes; ``price`` is
    ``S0 * H0[0]``. ``cpu_seconds`` covers the marching loop only.
    """

    H0: np.ndarray
    price: float
    cpu_seconds: float
    scheme: str
    grid: Grid
    params: MarketParams

    def value_at(self, R0: float, spot: float | None = None) -> float:
        """Price a seasoned contract with average-to-spot ratio ``R0`` at ``t = 0``.

        ``H(., 0)`` is interpolated linearly between nodes.
        """
        if not 0.0 <= R0 <= self.grid.R_max:
            raise ValidationError(f"R0 must lie in [0, {self.grid.R_max}], got {R0}")
        spot = self.params.S0 if spot is None else spot
        return recover_price(float(np.interp(R0, self.grid.R, self.H0)), spot)


def left_boundary_update(H_level_np1, k: float) -> float:
    """New ``H_1^n`` from ``H_1..H_3`` at level ``n+1`` with ``k = dt / (2 dR)``.

    Backward-Euler in time with a second-order one-sided difference in ``R``
    applied to ``H_t + H_R = 0``.
    """
    h1, h2, h3 = (float(x) for x in H_level_np1[:3])
    return (1.0 - 3.0 * k) * h1 + 4.0 * k * h2 - k * h3


def assemble_rhs(
    coeffs: SchemeCoefficients,
    H_np1,
    H1_n: float,
    HM1_n: float = 0.0,
    out: np.ndarray | None = None,
) -> np.ndarray:
    """Return ``A H^(n+1)_interior + b^(n)``.

    ``H_np1`` is the full level ``n+1`` (length ``M + 1``); ``H1_n`` and
    ``HM1_n`` are the level-``n`` boundary values at ``R = 0`` and ``R = R_max``.
    """
    H_np1 = np.asarray(H_np1, dtype=float)
    m = coeffs.n_rows
    if H_np1.shape != (m + 2,):
        raise ValidationError(f"level must have length {m + 2}, got {H_np1.shape}")
    if out is None:
        out = np.empty(m)
    _apply(coeffs.F[1:], coeffs.E, coeffs.D[:-1], np.ascontiguousarray(H_np1[1:-1]), out)
    out[0] += coeffs.F[0] * H_np1[0] - coeffs.J[0] * H1_n
    out[-1] += coeffs.D[-1] * H_np1[-1] - coeffs.G[-1] * HM1_n
    return out


def march(
    coeffs: SchemeCoefficients,
    grid: Grid,
    params: MarketParams,
    terminal=None,
    pivot_floor: float = DEFAULT_PIVOT_FLOOR,
    on_level=None,
) -> SolveReport:
    """Step the surface from ``t = T`` back to ``t = 0``.

    Parameters
    ----------
    coeffs
        Interior rows, ``grid.M - 1`` of them.
    grid, params
        Mesh and market. ``params.T`` must equal ``grid.T``.
    terminal
        Optional terminal profile on the nodes replacing the payoff
        ``max(1 - R/T, 0)``; used for convergence studies with smooth data.
    pivot_floor
        Passed to the tridiagonal factorization.
    on_level
        Optional ``callback(n, H)`` invoked with every computed level
        ``n = N .. 1`` (1-based, as in ``t_n = (n-1) dt``); ``H`` is a
        read-only view valid only during the call.

    Raises
    ------
    PivotBreakdownError
        If ``B`` cannot be eliminated without pivoting.
    NonFiniteSolutionError
        If a level contains NaN or inf; carries the (1-based) time level.
    """
    if coeffs.n_rows != grid.M - 1:
        raise ValidationError(f"expected {grid.M - 1} rows for this grid, got {coeffs.n_rows}")
    if not np.isclose(params.T, grid.T, rtol=0.0, atol=1e-12 * grid.T):
        raise ValidationError(f"grid maturity {grid.T} differs from params.T {params.T}")

    if terminal is None:
        H = np.array(final_condition(grid.R, grid.T), dtype=float)
    else:
        H = np.array(terminal, dtype=float)
        if H.shape != (grid.n_space,):
            raise ValidationError(f"terminal profile must have length {grid.n_space}")
    H[-1] = 0.0

    factor = ThomasFactorization(coeffs.lhs_operator(), pivot_floor)
    k = grid.dt / (2.0 * grid.dR)
    rhs = np.empty(coeffs.n_rows)
    interior = np.empty(coeffs.n_rows)

    start = time.perf_counter()
    for n in range(grid.N, 0, -1):
        h1 = left_boundary_update(H, k)
        assemble_rhs(coeffs, H, h1, 0.0, out=rhs)
        factor.solve(rhs, out=interior)
        H[0] = h1
        H[1:-1] = interior
        H[-1] = 0.0
        if not np.isfinite(H).all():
            bad = int(np.flatnonzero(~np.isfinite(H))[0])
            raise NonFiniteSolutionError(time_index=n, node_index=bad + 1)
        if on_level is not None:
            view = H.view()
            view.flags.writeable = False
            on_level(n, view)
    elapsed = time.perf_counter() - start

    H.flags.writeable = False
    return SolveReport(
        H0=H,
        price=recover_price(float(H[0]), params.S0),
        cpu_seconds=elapsed,
        scheme=coeffs.scheme,
        grid=grid,
        params=params,
    )
