"""Tridiagonal solves by Thomas elimination, and tridiagonal products.

Row ``i`` of an ``m x m`` operator reads
``lower[i-1] * x[i-1] + diag[i] * x[i] + upper[i] * x[i+1]``.
No pivoting is done; a pivot smaller than ``pivot_floor`` in magnitude raises
:class:`PivotBreakdownError` instead of being regularised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import PivotBreakdownError, ValidationError

DEFAULT_PIVOT_FLOOR = 1e-14


@dataclass(frozen=True)
class TridiagonalOperator:
    """Three diagonals of lengths ``m-1``, ``m``, ``m-1``."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=float, ndmin=1)
        diag = np.array(self.diag, dtype=float, ndmin=1)
        upper = np.array(self.upper, dtype=float, ndmin=1)
        m = diag.shape[0]
        if diag.ndim != 1 or m < 1:
            raise ValidationError("diag must be a non-empty 1-D sequence")
        if lower.shape != (m - 1,) or upper.shape != (m - 1,):
            raise ValidationError(
                f"off-diagonals must have length {m - 1}, got {lower.shape} and {upper.shape}"
            )
        for name, arr in (("lower", lower), ("diag", diag), ("upper", upper)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} has non-finite entries")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def size(self) -> int:
        return self.diag.shape[0]

    def to_dense(self) -> np.ndarray:
        m = self.size
        out = np.zeros((m, m))
        idx = np.arange(m)
        out[idx, idx] = self.diag
        out[idx[1:], idx[:-1]] = self.lower
        out[idx[:-1], idx[1:]] = self.upper
        return out


@njit(cache=True)
def _factor(lower, diag, upper, floor, pivots, mult):
    # Returns the first row whose pivot is below ``floor`` in magnitude, or -1.
    m = diag.shape[0]
    pivots[0] = diag[0]
    if not abs(pivots[0]) >= floor:
        return 0
    for i in range(1, m):
        mult[i] = lower[i - 1] / pivots[i - 1]
        pivots[i] = diag[i] - mult[i] * upper[i - 1]
        if not abs(pivots[i]) >= floor:
            return i
    return -1


@njit(cache=True, nogil=True)
def _sweep(pivots, mult, upper, rhs, out):
    m = pivots.shape[0]
    out[0] = rhs[0]
    for i in range(1, m):
        out[i] = rhs[i] - mult[i] * out[i - 1]
    out[m - 1] = out[m - 1] / pivots[m - 1]
    for i in range(m - 2, -1, -1):
        out[i] = (out[i] - upper[i] * out[i + 1]) / pivots[i]


@njit(cache=True, nogil=True)
def _apply(lower, diag, upper, v, out):
    m = diag.shape[0]
    for i in range(m):
        acc = diag[i] * v[i]
        if i > 0:
            acc += lower[i - 1] * v[i - 1]
        if i < m - 1:
            acc += upper[i] * v[i + 1]
        out[i] = acc


class ThomasFactorization:
    """Forward-elimination pivots of a fixed operator, reusable across solves.

    The elimination is done once at construction; :meth:`solve` then costs two
    sweeps and allocates nothing when ``out`` is supplied. Instances are
    read-only after construction, so concurrent solves are safe as long as each
    caller passes its own ``out``.
    """

    def __init__(self, op: TridiagonalOperator, pivot_floor: float = DEFAULT_PIVOT_FLOOR):
        if not pivot_floor > 0.0:
            raise ValidationError(f"pivot_floor must be > 0, got {pivot_floor}")
        m = op.size
        self.op = op
        self.pivot_floor = pivot_floor
        self.pivots = np.empty(m)
        self.multipliers = np.zeros(m)
        bad = _factor(op.lower, op.diag, op.upper, pivot_floor, self.pivots, self.multipliers)
        if bad >= 0:
            raise PivotBreakdownError(bad, float(self.pivots[bad]), pivot_floor)

    def solve(self, rhs, out: np.ndarray | None = None) -> np.ndarray:
        rhs = np.ascontiguousarray(rhs, dtype=float)
        if rhs.shape != (self.op.size,):
            raise ValidationError(f"rhs must have shape ({self.op.size},), got {rhs.shape}")
        if out is None:
            out = np.empty_like(rhs)
        _sweep(self.pivots, self.multipliers, self.op.upper, rhs, out)
        return out


def solve(op: TridiagonalOperator, rhs, pivot_floor: float = DEFAULT_PIVOT_FLOOR) -> np.ndarray:
    """Solve ``op @ x = rhs``."""
    return ThomasFactorization(op, pivot_floor).solve(rhs)


def apply(op: TridiagonalOperator, v) -> np.ndarray:
    """Return ``op @ v`` with out-of-range neighbours treated as zero."""
    v = np.ascontiguousarray(v, dtype=float)
    if v.shape != (op.size,):
        raise ValidationError(f"v must have shape ({op.size},), got {v.shape}")
    out = np.empty_like(v)
    _apply(op.lower, op.diag, op.upper, v, out)
    return out
