"""Exception hierarchy."""


class AsianPricingError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AsianPricingError, ValueError):
    """Invalid input parameters (bad grid, negative volatility, ...)."""


class NumericalError(AsianPricingError, ArithmeticError):
    """A solve broke down numerically."""


class PivotBreakdownError(NumericalError):
    """Thomas elimination hit a pivot below the configured floor."""

    def __init__(self, index: int, pivot: float, floor: float):
        self.index = index
        self.pivot = pivot
        self.floor = floor
        super().__init__(
            f"tridiagonal pivot breakdown at row {index}: |{pivot:.3e}| < {floor:.1e}"
        )


class NonFiniteSolutionError(NumericalError):
    """The time-marched surface contains NaN or inf."""

    def __init__(self, time_index: int, node_index: int):
        self.time_index = time_index
        self.node_index = node_index
        super().__init__(
            f"non-finite solution value at time level n={time_index}, node i={node_index}"
        )
