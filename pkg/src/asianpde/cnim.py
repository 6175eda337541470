"""Crank-Nicolson rows for ``H_t + c(R) H_RR + d(R) H_R = 0``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import SchemeCoefficients
from .grid import Grid
from .market import MarketParams


@dataclass(frozen=True)
class ConvectionDiffusionCoeffs:
    """Diffusion ``c = sigma^2 R^2 / 2`` and convection ``d = 1 - r R`` on every node."""

    c: np.ndarray
    d: np.ndarray


def convection_diffusion(grid: Grid, params: MarketParams) -> ConvectionDiffusionCoeffs:
    R = grid.R
    return ConvectionDiffusionCoeffs(c=0.5 * params.sigma**2 * R**2, d=1.0 - params.r * R)


def crank_nicolson_rows(c, d, dR: float, dt: float, scheme: str = "cnim") -> SchemeCoefficients:
    """Rows for arbitrary interior weights ``c_i``, ``d_i``."""
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    diff = c / (2.0 * dR * dR)
    conv = d / (4.0 * dR)
    return SchemeCoefficients(
        G=-diff - conv,
        K=c / (dR * dR) + 1.0 / dt,
        J=-diff + conv,
        D=diff + conv,
        E=-c / (dR * dR) + 1.0 / dt,
        F=diff - conv,
        scheme=scheme,
    )


def cnim_rows(grid: Grid, params: MarketParams) -> SchemeCoefficients:
    """Crank-Nicolson rows for nodes ``i = 2..M``.

    The ``R = 0`` node, where the equation degenerates, is left to the
    boundary update.
    """
    cd = convection_diffusion(grid, params)
    return crank_nicolson_rows(cd.c[1:-1], cd.d[1:-1], grid.dR, grid.dt)
