"""Fourth-order compact (HOC) rows for the reduced Asian PDE.

Writing the equation as ``c H_RR + d H_R = g`` with ``g = -H_t``, the leading
central-difference truncation error ``dR^2/12 (c H_RRRR + 2 d H_RRR)`` is
rewritten through the equation itself and moved into modified weights:

    A dxx H + B dx H = (1 + dR^2/12 dxx + F1-type first difference) g

The analytic derivatives ``c' = sigma^2 R``, ``c'' = sigma^2``, ``d' = -r`` and
``d'' = 0`` are substituted directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import SchemeCoefficients
from .errors import ValidationError
from .grid import Grid
from .market import MarketParams


@dataclass(frozen=True)
class HocNodeWeights:
    """Modified diffusion ``A``, convection ``B`` and gradient weight ``F1`` per interior node."""

    A: np.ndarray
    B: np.ndarray
    F1: np.ndarray
    k1: float  # dt / (2 dR^2)
    k2: float  # dt / (4 dR)


def hoc_weights(grid: Grid, params: MarketParams) -> HocNodeWeights:
    R = grid.interior
    if R[0] <= 0.0:
        raise ValidationError("compact rows are undefined at R = 0")
    r, s2 = params.r, params.sigma**2
    h2 = grid.dR**2
    c = 0.5 * s2 * R**2
    d = 1.0 - r * R
    dc = s2 * R

    A = (
        c
        + h2 / 12.0 * d**2 / c
        + dc * h2 * d / (12.0 * c)
        + h2 / 12.0 * s2
        - r * h2 / 6.0
        - h2 / (6.0 * c) * dc**2
        - h2 / (6.0 * c) * d * dc
    )
    B = d - r * h2 * d / (12.0 * c) + r * h2 / 6.0 * dc / c
    F1 = grid.dR / 24.0 * d / c - grid.dR / (12.0 * c) * dc
    return HocNodeWeights(
        A=A,
        B=B,
        F1=F1,
        k1=grid.dt / (2.0 * h2),
        k2=grid.dt / (4.0 * grid.dR),
    )


def hoc_rows(grid: Grid, params: MarketParams) -> SchemeCoefficients:
    """Compact-scheme rows for nodes ``i = 2..M``; every row sums to one on each side."""
    w = hoc_weights(grid, params)
    diff = w.k1 * w.A
    conv = w.k2 * w.B
    return SchemeCoefficients(
        G=-diff - conv + 1.0 / 12.0 + w.F1,
        K=2.0 * diff + 5.0 / 6.0,
        J=-diff + conv + 1.0 / 12.0 - w.F1,
        D=diff + conv + 1.0 / 12.0 + w.F1,
        E=-2.0 * diff + 5.0 / 6.0,
        F=diff - conv + 1.0 / 12.0 - w.F1,
        scheme="hoc",
    )
