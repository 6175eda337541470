"""Average-strike Asian call pricing by finite differences and Monte Carlo."""

from .errors import (
    AsianPricingError,
    NonFiniteSolutionError,
    PivotBreakdownError,
    ValidationError,
)
from .grid import Grid, build_grid
from .market import (
    MarketParams,
    ReducedState,
    deterministic_limit_price,
    final_condition,
    recover_price,
    terminal_payoff,
)
from .tridiag import ThomasFactorization, TridiagonalOperator, apply, solve
from .engine import (
    SchemeCoefficients,
    SolveReport,
    assemble_rhs,
    left_boundary_update,
    march,
)
from .cnim import ConvectionDiffusionCoeffs, cnim_rows, convection_diffusion
from .hoc import HocNodeWeights, hoc_rows, hoc_weights
from .montecarlo import McConfig, McEstimate, price_mc, simulate_path
from .pricing import PricingResult, price_pde, price_scheme

__all__ = [
    "AsianPricingError",
    "ConvectionDiffusionCoeffs",
    "Grid",
    "HocNodeWeights",
    "MarketParams",
    "McConfig",
    "McEstimate",
    "NonFiniteSolutionError",
    "PivotBreakdownError",
    "PricingResult",
    "ReducedState",
    "SchemeCoefficients",
    "SolveReport",
    "ThomasFactorization",
    "TridiagonalOperator",
    "ValidationError",
    "apply",
    "assemble_rhs",
    "build_grid",
    "cnim_rows",
    "convection_diffusion",
    "deterministic_limit_price",
    "final_condition",
    "hoc_rows",
    "hoc_weights",
    "left_boundary_update",
    "march",
    "price_mc",
    "price_pde",
    "price_scheme",
    "recover_price",
    "simulate_path",
    "solve",
    "terminal_payoff",
]
