"""Command-line interface: ``price``, ``sweep`` and ``figure-data``.

Settings come from built-in defaults, then an optional ``--config`` file of
``key = value`` lines, then command-line flags (flags win).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import report
from .errors import NumericalError, ValidationError
from .grid import build_grid
from .market import MarketParams
from .montecarlo import McConfig
from .pricing import SCHEMES, price_scheme

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2

DEFAULTS = {
    "s0": 100.0,
    "maturity": 1.0,
    "rmax": 5.0,
    "nspace": 501,
    "ntime": 101,
    "paths": 50_000,
    "steps": 100,
    "seed": 42,
    "averaging": "equal",
    "workers": None,
    "out": None,
}
FLOAT_KEYS = {"s0", "maturity", "rmax"}
INT_KEYS = {"nspace", "ntime", "paths", "steps", "seed", "workers"}
LIST_KEYS = {"scheme", "r", "sigma"}
CONFIG_KEYS = set(DEFAULTS) | LIST_KEYS


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def load_config(path: str | Path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment.

    ``scheme``, ``r`` and ``sigma`` accept comma-separated lists.
    """
    settings: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value' with a known key, got {raw!r}")
        try:
            settings[key] = _convert(key, value)
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return settings


def _convert(key: str, value: str):
    if key in LIST_KEYS:
        items = [v.strip() for v in value.split(",") if v.strip()]
        return items if key == "scheme" else [float(v) for v in items]
    if key in FLOAT_KEYS:
        return float(value)
    if key in INT_KEYS:
        return int(value)
    return value


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s0", type=float, help="spot price (default 100)")
    p.add_argument("--maturity", type=float, help="maturity in years (default 1)")
    p.add_argument("--rmax", type=float, help="truncation of the R axis (default 5)")
    p.add_argument("--nspace", type=int, help="space nodes (default 501)")
    p.add_argument("--ntime", type=int, help="time levels (default 101)")
    p.add_argument("--paths", type=int, help="Monte Carlo paths (default 50000)")
    p.add_argument("--steps", type=int, help="Monte Carlo time steps per path (default 100)")
    p.add_argument("--seed", type=int, help="Monte Carlo seed, unsigned 64-bit (default 42)")
    p.add_argument("--averaging", choices=("equal", "trapezoid"), help="Monte Carlo averaging rule")
    p.add_argument("--workers", type=int, help="worker threads")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--config", help="key = value settings file")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asianpde", description="Average-strike Asian call pricer")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("price", help="price one contract with one scheme")
    p.add_argument("--scheme", choices=SCHEMES, action="append")
    p.add_argument("--r", type=float, action="append")
    p.add_argument("--sigma", type=float, action="append")
    _add_common(p)

    p = sub.add_parser("sweep", help="price an (r, sigma) grid with several schemes")
    p.add_argument("--scheme", choices=SCHEMES, action="append")
    p.add_argument("--r", type=float, action="append")
    p.add_argument("--sigma", type=float, action="append")
    _add_common(p)

    p = sub.add_parser("figure-data", help="price-vs-sigma series at one rate")
    p.add_argument("--scheme", choices=SCHEMES, action="append")
    p.add_argument("--r", type=float, action="append")
    p.add_argument("--sigma", type=float, action="append")
    _add_common(p)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if args.config:
        settings.update(load_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _single(settings: dict, key: str):
    values = settings.get(key)
    if not values:
        raise ValidationError(f"--{key} is required")
    if len(values) != 1:
        raise ValidationError(f"--{key} takes a single value for this command")
    return values[0]


def _mc_config(s: dict) -> McConfig:
    return McConfig(n_paths=s["paths"], n_steps=s["steps"], seed=s["seed"], averaging=s["averaging"])


def _sweep_spec(s: dict, default_rates=report.DEFAULT_RATES) -> report.SweepSpec:
    extra = {} if s["workers"] is None else {"workers": s["workers"]}
    return report.SweepSpec(
        rates=tuple(s.get("r") or default_rates),
        sigmas=tuple(s.get("sigma") or report.DEFAULT_SIGMAS),
        schemes=tuple(s.get("scheme") or SCHEMES),
        S0=s["s0"],
        T=s["maturity"],
        R_max=s["rmax"],
        n_space=s["nspace"],
        n_time=s["ntime"],
        mc=_mc_config(s),
        out=s["out"],
        **extra,
    )


def cmd_price(s: dict) -> int:
    scheme = _single(s, "scheme")
    params = MarketParams(r=_single(s, "r"), sigma=_single(s, "sigma"), S0=s["s0"], T=s["maturity"])
    if scheme == "mc":
        result = price_scheme("mc", params, mc=_mc_config(s), workers=s["workers"] or 1)
    else:
        grid = build_grid(s["rmax"], s["nspace"], s["maturity"], s["ntime"])
        result = price_scheme(scheme, params, grid=grid)
    if result.price != result.price or abs(result.price) == float("inf"):
        raise NumericalError(f"non-finite price {result.price}")
    print(f"scheme       {scheme}")
    print(f"price        {result.price:.6f}")
    if result.stderr is not None:
        print(f"stderr       {result.stderr:.6f}")
    print(f"cpu_seconds  {result.cpu_seconds:.6f}")
    return EXIT_OK


def _emit_rows(rows, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            report.write_csv(rows, fh)


def cmd_sweep(s: dict) -> int:
    spec = _sweep_spec(s)
    rows = report.run_sweep(spec)
    print(report.render_table(rows))
    _emit_rows(rows, spec.out)
    failed = [(row.r, row.sigma, name, cell.error) for row in rows for name, cell in row.cells.items() if not cell.ok]
    for r, sigma, name, err in failed:
        print(f"FAILED r={r:g} sigma={sigma:g} scheme={name}: {err}", file=sys.stderr)
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_figure_data(s: dict) -> int:
    r = _single(s, "r")
    spec = _sweep_spec({**s, "r": [r]})
    rows = report.run_sweep(spec)
    if spec.out:
        with open(spec.out, "w", newline="") as fh:
            report.write_figure_csv(rows, r, fh)
    else:
        report.write_figure_csv(rows, r, sys.stdout)
    return EXIT_OK if all(row.ok for row in rows) else EXIT_NUMERICAL


COMMANDS = {"price": cmd_price, "sweep": cmd_sweep, "figure-data": cmd_figure_data}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](resolve(args))
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
