"""Uniform space-time mesh for the reduced problem."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ValidationError

DEFAULT_R_MAX = 5.0
DEFAULT_N_SPACE = 501
DEFAULT_N_TIME = 101


@dataclass(frozen=True)
class Grid:
    """Uniform mesh ``R_i = (i-1) dR`` on ``[0, R_max]`` and ``t_n = (n-1) dt`` on ``[0, T]``.

    ``n_space = M + 1`` and ``n_time = N + 1`` count nodes, endpoints included.
    Node coordinates are computed as ``k * length / intervals`` so that the
    endpoints, and the payoff kink ``R = T`` whenever it falls on a node, are
    reproduced exactly.
    """

    R_max: float
    n_space: int
    T: float
    n_time: int

    @property
    def M(self) -> int:
        return self.n_space - 1

    @property
    def N(self) -> int:
        return self.n_time - 1

    @property
    def dR(self) -> float:
        return self.R_max / self.M

    @property
    def dt(self) -> float:
        return self.T / self.N

    @cached_property
    def R(self) -> np.ndarray:
        nodes = np.arange(self.n_space, dtype=float) * self.R_max / self.M
        nodes[-1] = self.R_max
        nodes.flags.writeable = False
        return nodes

    @cached_property
    def t(self) -> np.ndarray:
        levels = np.arange(self.n_time, dtype=float) * self.T / self.N
        levels[-1] = self.T
        levels.flags.writeable = False
        return levels

    @property
    def interior(self) -> np.ndarray:
        """Nodes ``R_2 .. R_M`` where the scheme rows live."""
        return self.R[1:-1]

    def describe(self) -> str:
        return f"R in [0, {self.R_max:g}] x {self.n_space} nodes, t in [0, {self.T:g}] x {self.n_time} levels"


def build_grid(
    R_max: float = DEFAULT_R_MAX,
    n_space: int = DEFAULT_N_SPACE,
    T: float = 1.0,
    n_time: int = DEFAULT_N_TIME,
) -> Grid:
    """Validate inputs and return a :class:`Grid`.

    The payoff kink sits at ``R = T``, so ``R_max`` must exceed ``T``.
    """
    if int(n_space) != n_space or n_space < 5:
        raise ValidationError(f"n_space must be an integer >= 5, got {n_space}")
    if int(n_time) != n_time or n_time < 2:
        raise ValidationError(f"n_time must be an integer >= 2, got {n_time}")
    if not T > 0.0:
        raise ValidationError(f"T must be > 0, got {T}")
    if not R_max > T:
        raise ValidationError(f"R_max must exceed T (payoff kink inside the domain), got R_max={R_max}, T={T}")
    return Grid(R_max=float(R_max), n_space=int(n_space), T=float(T), n_time=int(n_time))
