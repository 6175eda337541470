"""Risk-neutral GBM simulation of the average-strike call.

Random numbers
--------------
Paths are grouped in fixed blocks of ``BLOCK_PATHS``. Block ``b`` draws its
uniforms from ``PCG64(SeedSequence(seed, spawn_key=(b,)))`` with
``Generator.random`` in row-major ``(paths, steps)`` order, shifts them by
``2**-54`` into the open interval (0, 1), and maps them to normals with the
inverse normal CDF (``scipy.special.ndtri``). The noise of a path therefore
depends only on ``(seed, path index)``, so estimates are bit-identical for any
worker count and for any ``n_paths`` prefix.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import ValidationError
from .market import MarketParams, terminal_payoff

BLOCK_PATHS = 4096
AVERAGING_RULES = ("equal", "trapezoid")


@dataclass(frozen=True)
class McConfig:
    n_paths: int = 50_000
    n_steps: int = 100
    seed: int = 42
    averaging: str = "equal"

    def __post_init__(self) -> None:
        if int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise ValidationError(f"n_paths must be a positive integer, got {self.n_paths}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValidationError(f"n_steps must be a positive integer, got {self.n_steps}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.averaging not in AVERAGING_RULES:
            raise ValidationError(f"averaging must be one of {AVERAGING_RULES}, got {self.averaging!r}")


@dataclass(frozen=True)
class McEstimate:
    """Discounted-payoff mean and its standard error.

    ``terminal_mean`` and ``terminal_stderr`` describe the discounted terminal
    spot ``exp(-rT) S_T``, whose expectation is ``S0`` under the risk-neutral
    measure; they are kept as a free diagnostic of the path generator.
    """

    price: float
    standard_error: float
    n_paths: int
    cpu_seconds: float
    terminal_mean: float
    terminal_stderr: float


def normal_block(seed: int, block: int, n_paths: int, n_steps: int) -> np.ndarray:
    """Standard normals for the first ``n_paths`` paths of block ``block``."""
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    u = np.random.Generator(np.random.PCG64(ss)).random((n_paths, n_steps))
    u += 2.0**-54
    return ndtri(u)


def _paths(params: MarketParams, noise: np.ndarray) -> np.ndarray:
    n_steps = noise.shape[-1]
    dt = params.T / n_steps
    increments = (params.r - 0.5 * params.sigma**2) * dt + params.sigma * math.sqrt(dt) * noise
    S = np.empty(noise.shape[:-1] + (n_steps + 1,))
    S[..., 0] = params.S0
    S[..., 1:] = params.S0 * np.exp(np.cumsum(increments, axis=-1))
    return S


def _average(S: np.ndarray, averaging: str) -> np.ndarray:
    if averaging == "equal":
        return S.mean(axis=-1)
    n_steps = S.shape[-1] - 1
    return (S.sum(axis=-1) - 0.5 * (S[..., 0] + S[..., -1])) / n_steps


def simulate_path(params: MarketParams, n_steps: int, noise, averaging: str = "equal") -> tuple[float, float]:
    """Terminal spot and discrete arithmetic average of one exact log-normal path.

    The average runs over all ``n_steps + 1`` samples ``S(t_0) .. S(t_n)``
    with equal weights (or trapezoidal weights if requested).
    """
    noise = np.asarray(noise, dtype=float)
    if noise.shape != (n_steps,):
        raise ValidationError(f"noise must have length {n_steps}, got {noise.shape}")
    if averaging not in AVERAGING_RULES:
        raise ValidationError(f"unknown averaging rule {averaging!r}")
    S = _paths(params, noise)
    return float(S[-1]), float(_average(S, averaging))


def _block_payoffs(params: MarketParams, cfg: McConfig, block: int) -> tuple[np.ndarray, np.ndarray]:
    start = block * BLOCK_PATHS
    count = min(BLOCK_PATHS, cfg.n_paths - start)
    S = _paths(params, normal_block(cfg.seed, block, count, cfg.n_steps))
    disc = math.exp(-params.r * params.T)
    return disc * terminal_payoff(S[:, -1], _average(S, cfg.averaging)), disc * S[:, -1]


def price_mc(params: MarketParams, cfg: McConfig = McConfig(), workers: int = 1) -> McEstimate:
    """Monte Carlo price ``exp(-rT) E[max(S_T - A, 0)]``.

    Blocks may be evaluated on ``workers`` threads; results are reassembled
    in path order before any reduction, so the estimate does not depend on
    ``workers``.
    """
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    n_blocks = -(-cfg.n_paths // BLOCK_PATHS)
    t0 = time.perf_counter()
    if workers == 1 or n_blocks == 1:
        parts = [_block_payoffs(params, cfg, b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _block_payoffs(params, cfg, b), range(n_blocks)))
    payoff = np.concatenate([p for p, _ in parts])
    terminal = np.concatenate([s for _, s in parts])
    elapsed = time.perf_counter() - t0

    n = cfg.n_paths
    if n > 1:
        se = float(payoff.std(ddof=1) / math.sqrt(n))
        tse = float(terminal.std(ddof=1) / math.sqrt(n))
    else:
        se = tse = 0.0
    return McEstimate(
        price=float(payoff.mean()),
        standard_error=se,
        n_paths=n,
        cpu_seconds=elapsed,
        terminal_mean=float(terminal.mean()),
        terminal_stderr=tse,
    )
