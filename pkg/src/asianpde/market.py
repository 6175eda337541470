"""Economic inputs and closed-form pieces of the reduced pricing problem.

The average-strike call value is written as ``V(S, I, t) = S * H(R, t)`` with
``R = I / S`` and ``I`` the running integral of the spot. Everything in this
module is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class MarketParams:
    """Flat-rate, flat-volatility Black-Scholes market.

    Attributes
    ----------
    r : float
        Continuously compounded risk-free rate per year (decimal).
    sigma : float
        Volatility per sqrt(year) (decimal).
    S0 : float
        Spot price today.
    T : float
        Maturity in years.
    """

    r: float
    sigma: float
    S0: float = 100.0
    T: float = 1.0

    def __post_init__(self) -> None:
        for name in ("r", "sigma", "S0", "T"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.sigma <= 0.0:
            raise ValidationError(f"sigma must be > 0, got {self.sigma}")
        if self.S0 <= 0.0:
            raise ValidationError(f"S0 must be > 0, got {self.S0}")
        if self.T <= 0.0:
            raise ValidationError(f"T must be > 0, got {self.T}")
        if self.r < 0.0:
            raise ValidationError(f"r must be >= 0, got {self.r}")


@dataclass(frozen=True)
class ReducedState:
    """Point ``(R, t)`` of the reduced problem; ``R`` is the average-to-spot ratio."""

    R: float
    t: float

    def __post_init__(self) -> None:
        if not self.R >= 0.0:
            raise ValidationError(f"R must be >= 0, got {self.R}")
        if not self.t >= 0.0:
            raise ValidationError(f"t must be >= 0, got {self.t}")

    @classmethod
    def from_path(cls, integral: float, spot: float, t: float) -> "ReducedState":
        """Build the state from the accumulated integral of the spot."""
        if spot <= 0.0:
            raise ValidationError(f"spot must be > 0, got {spot}")
        return cls(R=integral / spot, t=t)


def final_condition(R, T: float):
    """Terminal value ``max(1 - R/T, 0)`` of ``H``; vectorised over ``R``."""
    if not T > 0.0:
        raise ValidationError(f"T must be > 0, got {T}")
    R_arr = np.asarray(R, dtype=float)
    if np.any(R_arr < 0.0):
        raise ValidationError("R must be >= 0")
    out = np.maximum(1.0 - R_arr / T, 0.0)
    return float(out) if out.ndim == 0 else out


def terminal_payoff(S_T, running_avg):
    """Average-strike call payoff ``max(S_T - A, 0)``; vectorised."""
    S = np.asarray(S_T, dtype=float)
    A = np.asarray(running_avg, dtype=float)
    if np.any(S < 0.0) or np.any(A < 0.0):
        raise ValidationError("S_T and running_avg must be >= 0")
    out = np.maximum(S - A, 0.0)
    return float(out) if out.ndim == 0 else out


def recover_price(H00: float, S0: float) -> float:
    """Option value ``S0 * H(R=0, t=0)`` for a freshly issued contract."""
    if not math.isfinite(H00):
        raise ValidationError(f"H00 must be finite, got {H00!r}")
    return S0 * H00


def deterministic_limit_price(params: MarketParams) -> float:
    """Zero-volatility price ``S0 * (1 - (1 - exp(-rT)) / (rT))``.

    With no volatility the spot grows as ``S0 exp(rt)`` and the payoff is the
    gap between the terminal spot and its continuous average. ``r == 0`` is the
    analytic limit 0.
    """
    x = params.r * params.T
    if x == 0.0:
        return 0.0
    # 1 + expm1(-x)/x avoids cancellation for small x
    return params.S0 * (1.0 + math.expm1(-x) / x)
