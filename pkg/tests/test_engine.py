import numpy as np
import pytest
from hypothesis import given, strategies as st

from asianpde import (
    MarketParams,
    NonFiniteSolutionError,
    PivotBreakdownError,
    SchemeCoefficients,
    ValidationError,
    assemble_rhs,
    build_grid,
    cnim_rows,
    deterministic_limit_price,
    hoc_rows,
    left_boundary_update,
    march,
)

from helpers import PAIRS, RATES, SIGMAS, reference_solve

ROWS = {"cnim": cnim_rows, "hoc": hoc_rows}


def toy_coeffs(n_rows, seed=0, **overrides):
    rng = np.random.default_rng(seed)
    arrays = {name: rng.uniform(-1, 1, n_rows) for name in "GJDEF"}
    arrays["K"] = 10.0 + rng.uniform(0, 1, n_rows)
    arrays.update(overrides)
    return SchemeCoefficients(**arrays)


class TestLeftBoundary:
    @pytest.mark.parametrize("k", [0.0, 0.1, 0.5, 3.0])
    def test_constant_triple(self, k):
        assert left_boundary_update([1.0, 1.0, 1.0], k) == pytest.approx(1.0, abs=1e-15)

    def test_example(self):
        # (1 - 1.5) * 1 + 2 * 0.99 - 0.5 * 0.98
        assert left_boundary_update([1.0, 0.99, 0.98], 0.5) == pytest.approx(0.99, abs=1e-15)

    def test_zero_step_freezes(self):
        assert left_boundary_update([0.3, 7.0, -2.0], 0.0) == 0.3

    @given(st.floats(-1e3, 1e3), st.floats(0, 10))
    def test_constant_preservation(self, value, k):
        assert left_boundary_update([value] * 3, k) == pytest.approx(value, rel=1e-12, abs=1e-12)


class TestAssembleRhs:
    def test_zero(self):
        coeffs = toy_coeffs(5)
        np.testing.assert_array_equal(assemble_rhs(coeffs, np.zeros(7), 0.0), np.zeros(5))

    def test_dense_oracle(self):
        # M = 4: nodes 1..5, interior rows for i = 2, 3, 4
        coeffs = toy_coeffs(3, seed=4)
        H = np.array([0.9, 0.7, 0.4, 0.2, 0.05])
        H1_n, HM1_n = 0.93, 0.01
        A = np.zeros((3, 3))
        for row in range(3):
            A[row, row] = coeffs.E[row]
            if row > 0:
                A[row, row - 1] = coeffs.F[row]
            if row < 2:
                A[row, row + 1] = coeffs.D[row]
        b = np.zeros(3)
        b[0] = coeffs.F[0] * H[0] - coeffs.J[0] * H1_n
        b[2] = coeffs.D[2] * H[4] - coeffs.G[2] * HM1_n
        np.testing.assert_allclose(assemble_rhs(coeffs, H, H1_n, HM1_n), A @ H[1:-1] + b, rtol=1e-14)

    def test_constant_level_row_sums(self):
        grid = build_grid()
        coeffs = cnim_rows(grid, MarketParams(r=0.1, sigma=0.2))
        ones = np.ones(grid.n_space)
        rhs = assemble_rhs(coeffs, ones, 1.0)
        expected = coeffs.F + coeffs.E + coeffs.D
        expected[0] -= coeffs.J[0]
        np.testing.assert_allclose(rhs, expected, rtol=1e-12, atol=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            assemble_rhs(toy_coeffs(5), np.zeros(6), 0.0)


class TestSchemeCoefficients:
    def test_rejects_length_mismatch(self):
        with pytest.raises(ValidationError):
            toy_coeffs(4, G=np.zeros(3))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValidationError):
            toy_coeffs(4, E=np.array([0.0, np.nan, 0.0, 0.0]))


class TestMarch:
    @pytest.mark.parametrize(
        "scheme, r, sigma, expected",
        [("cnim", 0.06, 0.2, 6.1337), ("hoc", 0.1, 0.3, 9.2902), ("hoc", 0.2, 0.4, 14.0444)],
    )
    def test_published_prices(self, scheme, r, sigma, expected):
        assert reference_solve(scheme, r, sigma).price == pytest.approx(expected, abs=0.05)

    @pytest.mark.parametrize("scheme", ["cnim", "hoc"])
    def test_near_deterministic_limit(self, scheme):
        params = MarketParams(r=0.2, sigma=0.001)
        price = march(ROWS[scheme](build_grid(), params), build_grid(), params).price
        assert price == pytest.approx(deterministic_limit_price(params), rel=5e-3)

    def test_rejects_row_mismatch(self):
        grid = build_grid(2.0, 9, 1.0, 3)
        with pytest.raises(ValidationError):
            march(toy_coeffs(5), grid, MarketParams(r=0.1, sigma=0.2))

    def test_rejects_maturity_mismatch(self):
        grid = build_grid(5.0, 9, 2.0, 3)
        with pytest.raises(ValidationError):
            march(toy_coeffs(7), grid, MarketParams(r=0.1, sigma=0.2))

    def test_pivot_breakdown_propagates(self):
        grid = build_grid(2.0, 9, 1.0, 3)
        with pytest.raises(PivotBreakdownError):
            march(toy_coeffs(7, K=np.zeros(7)), grid, MarketParams(r=0.1, sigma=0.2))

    def test_non_finite_reports_time_level(self):
        grid = build_grid(2.0, 9, 1.0, 6)
        coeffs = toy_coeffs(7, E=np.full(7, 1e200), K=np.ones(7))
        with pytest.raises(NonFiniteSolutionError) as info:
            march(coeffs, grid, MarketParams(r=0.1, sigma=0.2))
        assert 1 <= info.value.time_index <= grid.N

    @pytest.mark.parametrize("scheme", ["cnim", "hoc"])
    def test_boundaries_every_level(self, scheme):
        grid = build_grid()
        params = MarketParams(r=0.1, sigma=0.2)
        k = grid.dt / (2 * grid.dR)
        seen = []
        previous = [np.maximum(1 - grid.R / grid.T, 0.0)]

        def check(n, H):
            assert H[-1] == 0.0
            assert H[0] == left_boundary_update(previous[0], k)
            previous[0] = H.copy()
            seen.append(n)

        march(ROWS[scheme](grid, params), grid, params, on_level=check)
        assert seen == list(range(grid.N, 0, -1))

    def test_custom_terminal(self):
        grid = build_grid(5.0, 51, 1.0, 11)
        params = MarketParams(r=0.1, sigma=0.3)
        zero = march(cnim_rows(grid, params), grid, params, terminal=np.zeros(51))
        np.testing.assert_array_equal(zero.H0, 0.0)
        with pytest.raises(ValidationError):
            march(cnim_rows(grid, params), grid, params, terminal=np.zeros(50))

    def test_report(self):
        rep = reference_solve("hoc", 0.1, 0.3)
        assert rep.scheme == "hoc"
        assert rep.price == 100.0 * rep.H0[0]
        assert rep.cpu_seconds > 0
        assert rep.H0.shape == (501,)

    def test_seasoned_interpolation(self):
        rep = reference_solve("cnim", 0.1, 0.3)
        assert rep.value_at(0.0) == rep.price
        assert rep.value_at(0.5) == pytest.approx(100.0 * rep.H0[50], rel=1e-12)
        midpoint = 0.5 * (rep.H0[50] + rep.H0[51]) * 100.0
        assert rep.value_at(0.505) == pytest.approx(midpoint, rel=1e-12)
        assert rep.value_at(0.5, spot=50.0) == pytest.approx(0.5 * rep.value_at(0.5), rel=1e-12)
        with pytest.raises(ValidationError):
            rep.value_at(6.0)


# Cells whose reference-grid surfaces oscillate past 1e-3 around the payoff kink.
# These are the same solves that reproduce the published low-volatility prices.
BOUND_OUTLIERS = {("cnim", 0.06, 0.05), ("cnim", 0.1, 0.05), ("cnim", 0.2, 0.05), ("hoc", 0.06, 0.05)}
MONOTONE_OUTLIERS = {("cnim", 0.06, 0.05), ("cnim", 0.1, 0.05)}


def _cases(outliers):
    out = []
    for scheme in ("cnim", "hoc"):
        for r, s in PAIRS:
            marks = ()
            if (scheme, r, s) in outliers:
                marks = pytest.mark.xfail(strict=True, reason="low-volatility kink oscillation on the 501x101 grid")
            out.append(pytest.param(scheme, r, s, marks=marks, id=f"{scheme}-{r}-{s}"))
    return out


@pytest.mark.parametrize("scheme, r, sigma", _cases(BOUND_OUTLIERS))
def test_surface_bounds(scheme, r, sigma):
    H = reference_solve(scheme, r, sigma).H0
    assert H.min() >= -1e-3 and H.max() <= 1 + 1e-3


@pytest.mark.parametrize("scheme, r, sigma", _cases(MONOTONE_OUTLIERS))
def test_surface_monotone_in_R(scheme, r, sigma):
    H = reference_solve(scheme, r, sigma).H0
    assert np.all(np.diff(H) <= 1e-3)


@pytest.mark.parametrize("scheme", ["cnim", "hoc"])
def test_price_monotone_in_sigma_and_rate(scheme):
    prices = np.array([[reference_solve(scheme, r, s).price for s in SIGMAS] for r in RATES])
    assert np.all(np.diff(prices, axis=1) >= 0)
    assert np.all(np.diff(prices, axis=0) >= 0)
