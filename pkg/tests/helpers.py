"""Published reference values and cached reference-grid solves shared by the tests."""

from functools import lru_cache

from asianpde import MarketParams, build_grid, price_pde

RATES = (0.06, 0.1, 0.2)
SIGMAS = (0.05, 0.1, 0.2, 0.3, 0.4)
PAIRS = [(r, s) for r in RATES for s in SIGMAS]

# (r, sigma) -> price, S0 = 100, T = 1, R in [0, 5], 501 x 101 nodes
TABLE_CNIM = {
    (0.06, 0.05): 3.5025, (0.06, 0.1): 4.1353, (0.06, 0.2): 6.1337, (0.06, 0.3): 8.3256, (0.06, 0.4): 10.5403,
    (0.1, 0.05): 5.1148, (0.1, 0.1): 5.5629, (0.1, 0.2): 7.2951, (0.1, 0.3): 9.3669, (0.1, 0.4): 11.5081,
    (0.2, 0.05): 9.3988, (0.2, 0.1): 9.5333, (0.2, 0.2): 10.547, (0.2, 0.3): 12.2035, (0.2, 0.4): 14.0885,
}
TABLE_HOC = {
    (0.06, 0.05): 3.1391, (0.06, 0.1): 3.8929, (0.06, 0.2): 5.9919, (0.06, 0.3): 8.2462, (0.06, 0.4): 10.4921,
    (0.1, 0.05): 4.8784, (0.1, 0.1): 5.3592, (0.1, 0.2): 7.1641, (0.1, 0.3): 9.2902, (0.1, 0.4): 11.4607,
    (0.2, 0.05): 9.3449, (0.2, 0.1): 9.4385, (0.2, 0.2): 10.4486, (0.2, 0.3): 12.1361, (0.2, 0.4): 14.0444,
}
TABLE_MC = {
    (0.06, 0.05): 3.1509, (0.06, 0.1): 4.0124, (0.06, 0.2): 6.1172, (0.06, 0.3): 8.3155, (0.06, 0.4): 10.5358,
    (0.1, 0.05): 4.8734, (0.1, 0.1): 5.4183, (0.1, 0.2): 7.2625, (0.1, 0.3): 9.3484, (0.1, 0.4): 11.4952,
    (0.2, 0.05): 9.3486, (0.2, 0.1): 9.433, (0.2, 0.2): 10.4894, (0.2, 0.3): 12.163, (0.2, 0.4): 14.0581,
}
TABLES = {"cnim": TABLE_CNIM, "hoc": TABLE_HOC}


@lru_cache(maxsize=None)
def reference_solve(scheme: str, r: float, sigma: float):
    return price_pde(scheme, MarketParams(r=r, sigma=sigma), build_grid())
