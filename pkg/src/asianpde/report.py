"""(r, sigma) sweeps, comparison tables and CSV output."""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import AsianPricingError, ValidationError
from .grid import build_grid
from .market import MarketParams
from .montecarlo import McConfig
from .pricing import SCHEMES, price_scheme

logger = logging.getLogger(__name__)

DEFAULT_RATES = (0.06, 0.1, 0.2)
DEFAULT_SIGMAS = (0.05, 0.1, 0.2, 0.3, 0.4)
CSV_HEADER = ("r", "sigma", "scheme", "price", "stderr", "cpu_seconds", "nspace", "ntime", "paths", "steps", "seed")


@dataclass(frozen=True)
class SweepSpec:
    rates: tuple[float, ...] = DEFAULT_RATES
    sigmas: tuple[float, ...] = DEFAULT_SIGMAS
    schemes: tuple[str, ...] = SCHEMES
    S0: float = 100.0
    T: float = 1.0
    R_max: float = 5.0
    n_space: int = 501
    n_time: int = 101
    mc: McConfig = McConfig()
    out: str | None = None
    workers: int = field(default_factory=lambda: min(4, os.cpu_count() or 1))

    def __post_init__(self) -> None:
        object.__setattr__(self, "rates", tuple(float(x) for x in self.rates))
        object.__setattr__(self, "sigmas", tuple(float(x) for x in self.sigmas))
        object.__setattr__(self, "schemes", tuple(dict.fromkeys(self.schemes)))
        if not self.rates or not self.sigmas:
            raise ValidationError("rate and volatility lists must be non-empty")
        if not self.schemes:
            raise ValidationError("select at least one scheme")
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown:
            raise ValidationError(f"unknown schemes {sorted(unknown)}")
        if self.workers < 1:
            raise ValidationError(f"workers must be >= 1, got {self.workers}")
        for r in self.rates:
            for sigma in self.sigmas:
                MarketParams(r=r, sigma=sigma, S0=self.S0, T=self.T)
        build_grid(self.R_max, self.n_space, self.T, self.n_time)


@dataclass(frozen=True)
class CellResult:
    """One scheme's outcome at one (r, sigma) pair; ``price`` is None on failure."""

    price: float | None
    cpu_seconds: float | None
    stderr: float | None = None
    nspace: int | None = None
    ntime: int | None = None
    paths: int | None = None
    steps: int | None = None
    seed: int | None = None
    error: str | None = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.price is not None


@dataclass(frozen=True)
class ComparisonRow:
    r: float
    sigma: float
    cells: dict[str, CellResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells.values())


def cell_seed(base_seed: int, r_index: int, sigma_index: int) -> int:
    """Per-cell 64-bit MC seed, independent of evaluation order."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(r_index, sigma_index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _run_cell(spec: SweepSpec, ri: int, si: int, scheme: str) -> CellResult:
    r, sigma = spec.rates[ri], spec.sigmas[si]
    if scheme == "mc":
        mc = replace(spec.mc, seed=cell_seed(spec.mc.seed, ri, si))
        meta = dict(paths=mc.n_paths, steps=mc.n_steps, seed=mc.seed)
    else:
        mc = None
        meta = dict(nspace=spec.n_space, ntime=spec.n_time)
    try:
        params = MarketParams(r=r, sigma=sigma, S0=spec.S0, T=spec.T)
        grid = build_grid(spec.R_max, spec.n_space, spec.T, spec.n_time)
        res = price_scheme(scheme, params, grid=grid, mc=mc)
        if not np.isfinite(res.price):
            raise AsianPricingError(f"non-finite price {res.price}")
    except AsianPricingError as exc:
        logger.warning("cell r=%g sigma=%g scheme=%s failed: %s", r, sigma, scheme, exc)
        return CellResult(price=None, cpu_seconds=None, error=str(exc), **meta)
    return CellResult(price=res.price, cpu_seconds=res.cpu_seconds, stderr=res.stderr, **meta)


def run_sweep(spec: SweepSpec) -> list[ComparisonRow]:
    """Price every (r, sigma, scheme) cell; failures are kept per cell.

    Rows come back in ``rates`` x ``sigmas`` order regardless of scheduling.
    """
    jobs = [
        (ri, si, scheme)
        for ri in range(len(spec.rates))
        for si in range(len(spec.sigmas))
        for scheme in spec.schemes
    ]
    if spec.workers == 1:
        results = [_run_cell(spec, *job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(lambda job: _run_cell(spec, *job), jobs))

    by_cell: dict[tuple[int, int], dict[str, CellResult]] = {}
    for (ri, si, scheme), res in zip(jobs, results):
        by_cell.setdefault((ri, si), {})[scheme] = res
    return [
        ComparisonRow(spec.rates[ri], spec.sigmas[si], by_cell[(ri, si)])
        for ri in range(len(spec.rates))
        for si in range(len(spec.sigmas))
    ]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_csv(rows: list[ComparisonRow], stream) -> None:
    """One line per (r, sigma, scheme).

    Prices, errors and timings carry 17 significant digits; ``r`` and
    ``sigma`` use the shortest exact representation.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        for scheme, c in row.cells.items():
            writer.writerow(
                [
                    repr(row.r), repr(row.sigma), scheme, _fmt(c.price), _fmt(c.stderr),
                    _fmt(c.cpu_seconds), _fmt(c.nspace), _fmt(c.ntime), _fmt(c.paths),
                    _fmt(c.steps), _fmt(c.seed),
                ]
            )


def read_csv(stream) -> list[ComparisonRow]:
    reader = csv.reader(stream)
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValidationError(f"unexpected CSV header {header}")

    def opt(value, kind):
        return kind(value) if value != "" else None

    cells: dict[tuple[float, float], dict[str, CellResult]] = {}
    for rec in reader:
        if not rec:
            continue
        r, sigma, scheme, price, stderr, cpu, nspace, ntime, paths, steps, seed = rec
        cells.setdefault((float(r), float(sigma)), {})[scheme] = CellResult(
            price=opt(price, float),
            cpu_seconds=opt(cpu, float),
            stderr=opt(stderr, float),
            nspace=opt(nspace, int),
            ntime=opt(ntime, int),
            paths=opt(paths, int),
            steps=opt(steps, int),
            seed=opt(seed, int),
        )
    return [ComparisonRow(r, s, c) for (r, s), c in cells.items()]


def render_table(rows: list[ComparisonRow]) -> str:
    """Text table laid out like the published comparison tables.

    One column group per rate, one column per scheme, one block of two lines
    per volatility: prices to four decimals, then CPU seconds in parentheses.
    """
    rates = list(dict.fromkeys(row.r for row in rows))
    sigmas = list(dict.fromkeys(row.sigma for row in rows))
    schemes = list(dict.fromkeys(s for row in rows for s in row.cells))
    lookup = {(row.r, row.sigma): row for row in rows}
    width = 12
    cols = [(r, s) for r in rates for s in schemes]

    def line(first: str, cells: list[str]) -> str:
        return f"{first:<8}" + "".join(f"{c:>{width}}" for c in cells)

    out = [
        line("r ->", [f"{r:g}" for r, _ in cols]),
        line("sigma", [s.upper() for _, s in cols]),
    ]
    rule = "-" * len(out[0])
    out.insert(0, rule)
    out.append(rule)
    for sigma in sigmas:
        prices, times = [], []
        for r, s in cols:
            row = lookup.get((r, sigma))
            cell = row.cells.get(s) if row else None
            if cell is None:
                prices.append("")
                times.append("")
            elif not cell.ok:
                prices.append("FAILED")
                times.append("")
            else:
                prices.append(f"{cell.price:.4f}")
                times.append(f"({cell.cpu_seconds:.4f})")
        out.append(line(f"{sigma:g}", prices))
        out.append(line("", times))
        out.append(rule)
    return "\n".join(out)


def figure_rows(rows: list[ComparisonRow], r: float) -> tuple[list[str], list[list]]:
    """Reshape the sweep at one rate into (sigma, price per scheme) series."""
    selected = [row for row in rows if row.r == r]
    if not selected:
        raise ValidationError(f"rate {r} not in sweep")
    schemes = list(dict.fromkeys(s for row in selected for s in row.cells))
    header = ["sigma"] + [f"price_{s}" for s in schemes]
    body = [[row.sigma] + [row.cells[s].price for s in schemes] for row in selected]
    return header, body


def write_figure_csv(rows: list[ComparisonRow], r: float, stream) -> None:
    header, body = figure_rows(rows, r)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for rec in body:
        writer.writerow([repr(rec[0])] + [_fmt(x) for x in rec[1:]])


def to_csv_text(rows: list[ComparisonRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()
