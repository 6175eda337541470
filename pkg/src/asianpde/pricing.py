"""Single entry point dispatching to a PDE scheme or Monte Carlo."""

from __future__ import annotations

from dataclasses import dataclass

from .cnim import cnim_rows
from .engine import SolveReport, march
from .errors import ValidationError
from .grid import Grid, build_grid
from .hoc import hoc_rows
from .market import MarketParams
from .montecarlo import McConfig, price_mc

PDE_SCHEMES = {"cnim": cnim_rows, "hoc": hoc_rows}
SCHEMES = ("cnim", "hoc", "mc")


@dataclass(frozen=True)
class PricingResult:
    scheme: str
    price: float
    cpu_seconds: float
    stderr: float | None = None
    grid: Grid | None = None
    mc: McConfig | None = None


def price_pde(scheme: str, params: MarketParams, grid: Grid | None = None) -> SolveReport:
    """Build the rows of ``scheme`` and march them over ``grid`` (reference grid by default)."""
    try:
        rows = PDE_SCHEMES[scheme]
    except KeyError:
        raise ValidationError(f"unknown PDE scheme {scheme!r}") from None
    if grid is None:
        grid = build_grid(T=params.T)
    return march(rows(grid, params), grid, params)


def price_scheme(
    scheme: str,
    params: MarketParams,
    grid: Grid | None = None,
    mc: McConfig | None = None,
    workers: int = 1,
) -> PricingResult:
    if scheme == "mc":
        mc = mc or McConfig()
        est = price_mc(params, mc, workers=workers)
        return PricingResult("mc", est.price, est.cpu_seconds, stderr=est.standard_error, mc=mc)
    report = price_pde(scheme, params, grid)
    return PricingResult(scheme, report.price, report.cpu_seconds, grid=report.grid)
